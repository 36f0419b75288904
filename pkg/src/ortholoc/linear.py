"""Exact linear algebra over prime fields and the subspace lattice ``G(F_q^n)``.

Vectors are tuples of residues; a vector's index is its little-endian base-q
digit encoding. Subspaces are identified by their reduced row-echelon basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from . import _caps
from .errors import DimensionMismatch, NotPrime
from .lattice import Lattice
from .order import Poset, bits

Vector = tuple[int, ...]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise NotPrime(f"{self.q} is not prime", witness=self.q)

    def inv(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.q - 2, self.q)


def vector_index(v: Sequence[int], q: int) -> int:
    idx = 0
    for c in reversed(v):
        idx = idx * q + c % q
    return idx


def index_vector(idx: int, q: int, n: int) -> Vector:
    out = []
    for _ in range(n):
        idx, c = divmod(idx, q)
        out.append(c)
    return tuple(out)


def rref(rows: Iterable[Sequence[int]], q: int) -> tuple[Vector, ...]:
    """Reduced row-echelon form mod ``q`` with zero rows dropped."""
    m = [[x % q for x in r] for r in rows]
    if not m:
        return ()
    width = len(m[0])
    pivot_row = 0
    for col in range(width):
        pr = next((r for r in range(pivot_row, len(m)) if m[r][col]), None)
        if pr is None:
            continue
        m[pivot_row], m[pr] = m[pr], m[pivot_row]
        inv = pow(m[pivot_row][col], q - 2, q)
        m[pivot_row] = [x * inv % q for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % q for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return tuple(tuple(r) for r in m[:pivot_row])


def rank(rows: Iterable[Sequence[int]], q: int) -> int:
    return len(rref(rows, q))


@dataclass(frozen=True)
class Subspace:
    q: int
    n: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], q: int, n: int) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        if any(len(v) != n for v in vecs):
            raise DimensionMismatch(f"vectors must have length {n}")
        return cls(q, n, rref(vecs, q))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def encode(self) -> bytes:
        return bytes([self.q % 256, self.n, self.dim]) + bytes(x for row in self.basis for x in row)

    @cached_property
    def members(self) -> tuple[Vector, ...]:
        out = []
        for coeffs in product(range(self.q), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = [(x + c * y) % self.q for x, y in zip(v, row)]
            out.append(tuple(v))
        return tuple(out)

    @cached_property
    def mask(self) -> int:
        """Bitmask over vector indices."""
        m = 0
        for v in self.members:
            m |= 1 << vector_index(v, self.q)
        return m

    def contains(self, v: Sequence[int]) -> bool:
        return bool(self.mask >> vector_index(v, self.q) & 1)

    def label(self) -> str:
        if not self.basis:
            return "0"
        return "<" + "|".join("".join(str(x) for x in row) for row in self.basis) + ">"


def intersection(u: Subspace, w: Subspace) -> Subspace:
    """Zassenhaus: row-reduce ``[[U, U], [W, 0]]``; rows starting with ``n`` zeros span ``U ∩ W``."""
    n, q = u.n, u.q
    if (w.n, w.q) != (n, q):
        raise DimensionMismatch("subspaces of different spaces")
    block = [list(r) + list(r) for r in u.basis] + [list(r) + [0] * n for r in w.basis]
    reduced = rref(block, q) if block else ()
    return Subspace(q, n, rref([r[n:] for r in reduced if not any(r[:n])], q))


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    if (w.n, w.q) != (u.n, u.q):
        raise DimensionMismatch("subspaces of different spaces")
    return Subspace(u.q, u.n, rref(u.basis + w.basis, u.q))


def _rref_matrices(q: int, n: int, k: int):
    for pivots in combinations(range(n), k):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            yield tuple(tuple(r) for r in rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class SubspaceLatticeModel:
    q: int
    n: int
    subspaces: tuple[Subspace, ...]
    lattice: Lattice = field(repr=False)

    @cached_property
    def _by_basis(self) -> dict:
        return {s.basis: i for i, s in enumerate(self.subspaces)}

    @cached_property
    def _by_mask(self) -> dict:
        return {s.mask: i for i, s in enumerate(self.subspaces)}

    def index_of(self, s: Subspace) -> int:
        return self._by_basis[s.basis]

    def index_of_span(self, vectors: Iterable[Sequence[int]]) -> int:
        return self._by_basis[rref([tuple(v) for v in vectors], self.q)]

    def index_of_mask(self, mask: int) -> int | None:
        return self._by_mask.get(mask)

    @cached_property
    def vectors(self) -> tuple[Vector, ...]:
        return tuple(index_vector(i, self.q, self.n) for i in range(self.q ** self.n))

    @cached_property
    def line_of(self) -> tuple[int, ...]:
        """Subspace index of the span of each vector (the zero space for 0)."""
        return tuple(self.index_of_span([v]) for v in self.vectors)

    @property
    def zero(self) -> int:
        return self.lattice.bottom

    @property
    def full(self) -> int:
        return self.lattice.top


@lru_cache(maxsize=32)
def enumerate_subspaces(q: int, n: int) -> SubspaceLatticeModel:
    PrimeField(q)
    if n < 1:
        raise DimensionMismatch("dimension must be positive")
    _caps.require(q ** n, _caps.VECTOR_CAP, "q**n")
    total = sum(gaussian_binomial(n, k, q) for k in range(n + 1))
    _caps.require(total, _caps.SUBSPACE_COUNT_CAP, "number of subspaces")
    subspaces = [Subspace(q, n, basis) for k in range(n + 1) for basis in _rref_matrices(q, n, k)]
    subspaces.sort(key=lambda s: (s.dim, s.basis))
    masks = [s.mask for s in subspaces]
    up = [sum(1 << j for j, mj in enumerate(masks) if mi & ~mj == 0) for mi in masks]
    poset = Poset.from_up_masks(up, tuple(s.label() for s in subspaces))
    by_basis = {s.basis: i for i, s in enumerate(subspaces)}
    size = len(subspaces)
    meet = [[0] * size for _ in range(size)]
    join = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            meet[i][j] = meet[j][i] = by_basis[intersection(subspaces[i], subspaces[j]).basis]
            join[i][j] = join[j][i] = by_basis[subspace_sum(subspaces[i], subspaces[j]).basis]
    lattice = Lattice(poset, tuple(map(tuple, meet)), tuple(map(tuple, join)), 0, size - 1)
    return SubspaceLatticeModel(q, n, tuple(subspaces), lattice)


def members_form_subspace(mask: int, q: int, n: int) -> bool:
    """Whether the vectors in ``mask`` are exactly a linear subspace."""
    vecs = [index_vector(i, q, n) for i in bits(mask)]
    if not vecs:
        return False
    return Subspace.span(vecs, q, n).mask == mask
