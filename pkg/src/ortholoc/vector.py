"""Locality relations on ``F_q^n`` and their transfer to the subspace lattice."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import prod
from typing import Callable, Sequence

from . import _caps
from .errors import DimensionMismatch, NotABasis, PreconditionFailed
from .linear import (
    PrimeField,
    Subspace,
    SubspaceLatticeModel,
    Vector,
    enumerate_subspaces,
    index_vector,
    rank,
    vector_index,
)
from .locality import LocalityRelation, is_lattice_locality, passes_chain
from .order import bits, greatest
from .ortho import Orthocomplementation, enumerate_orthocomplementations, validate_orthocomplementation


@dataclass(frozen=True)
class BilinearForm:
    q: int
    n: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        PrimeField(self.q)
        if len(self.matrix) != self.n or any(len(r) != self.n for r in self.matrix):
            raise DimensionMismatch(f"form matrix must be {self.n}x{self.n}")
        object.__setattr__(self, "matrix", tuple(tuple(x % self.q for x in r) for r in self.matrix))

    @classmethod
    def identity(cls, q: int, n: int) -> "BilinearForm":
        return cls(q, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, q: int, n: int) -> "BilinearForm":
        return cls(q, n, tuple((0,) * n for _ in range(n)))

    def __call__(self, v: Sequence[int], w: Sequence[int]) -> int:
        return sum(v[i] * self.matrix[i][j] * w[j] for i in range(self.n) for j in range(self.n)) % self.q


@dataclass(frozen=True)
class VectorLocality:
    """Symmetric relation on all ``q**n`` vectors whose polars are subspaces.

    ``rows[i]`` is the polar of the vector with index ``i``.
    """

    q: int
    n: int
    rows: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        size = self.q ** self.n
        if len(self.rows) != size:
            raise DimensionMismatch(f"expected {size} rows")
        for a in range(size):
            for b in bits(self.rows[a]):
                if not self.rows[b] >> a & 1:
                    raise ValueError(f"vector relation not symmetric at ({a}, {b})")
        if self.rows[0] != (1 << size) - 1:
            raise ValueError("the zero vector must be related to every vector")
        bad = self.non_subspace_polar()
        if bad is not None:
            raise ValueError(f"a polar set is not a subspace (mask {bad:#x})")

    @classmethod
    def from_predicate(cls, q: int, n: int, related: Callable[[Vector, Vector], bool]) -> "VectorLocality":
        vecs = [index_vector(i, q, n) for i in range(q ** n)]
        rows = tuple(sum(1 << j for j, w in enumerate(vecs) if related(v, w)) for v in vecs)
        return cls(q, n, rows)

    @property
    def model(self) -> SubspaceLatticeModel:
        return enumerate_subspaces(self.q, self.n)

    def related(self, v: Sequence[int], w: Sequence[int]) -> bool:
        return bool(self.rows[vector_index(v, self.q)] >> vector_index(w, self.q) & 1)

    def polar_mask(self, mask: int) -> int:
        acc = (1 << len(self.rows)) - 1
        for i in bits(mask):
            acc &= self.rows[i]
        return acc

    def polar_subspace(self, s: Subspace) -> Subspace:
        m = self.model
        return m.subspaces[m.index_of_mask(self.polar_mask(s.mask))]

    def non_subspace_polar(self) -> int | None:
        """A polar ``X^⊤`` that is not a subspace, or ``None``.

        The polars of all subsets are exactly the intersections of rows, so the
        closure of the rows under intersection covers every subset ``X``.
        """
        full = (1 << len(self.rows)) - 1
        family = {full}
        for row in set(self.rows):
            family |= {f & row for f in family}
        m = self.model
        for f in sorted(family):
            if m.index_of_mask(f) is None:
                return f
        return None

    @cached_property
    def isotropic(self) -> tuple[Vector, ...]:
        return tuple(index_vector(i, self.q, self.n) for i in range(1, len(self.rows)) if self.rows[i] >> i & 1)


def form_locality(f: BilinearForm) -> VectorLocality:
    """``v ⊤ w`` iff ``Q(v, w) = 0 = Q(w, v)``."""
    return VectorLocality.from_predicate(f.q, f.n, lambda v, w: f(v, w) == 0 and f(w, v) == 0)


def paper_fixture(q: int = 2) -> VectorLocality:
    """``e1 ⊤ e2`` and ``e2 ⊤ e3`` extended by symmetry and linearity on ``F_q^3``."""
    left = Subspace.span([(1, 0, 0), (0, 0, 1)], q, 3)
    right = Subspace.span([(0, 1, 0)], q, 3)

    def related(u, w):
        if not any(u) or not any(w):
            return True
        return (left.contains(u) and right.contains(w)) or (left.contains(w) and right.contains(u))

    return VectorLocality.from_predicate(q, 3, related)


def disjoint_support(q: int, n: int) -> VectorLocality:
    return VectorLocality.from_predicate(q, n, lambda u, w: all(not (x and y) for x, y in zip(u, w)))


def _check_model(v: VectorLocality, m: SubspaceLatticeModel) -> None:
    if (v.q, v.n) != (m.q, m.n):
        raise DimensionMismatch(f"locality on F_{v.q}^{v.n} but model of F_{m.q}^{m.n}")


def vs_to_lattice_locality(v: VectorLocality, m: SubspaceLatticeModel | None = None) -> LocalityRelation:
    """``U ⊤ W`` iff every vector of ``U`` is related to every vector of ``W``."""
    m = m or v.model
    _check_model(v, m)
    l = m.lattice
    rows = []
    for u in m.subspaces:
        pol = v.polar_mask(u.mask)
        rows.append(sum(1 << j for j, w in enumerate(m.subspaces) if w.mask & ~pol == 0))
    r = LocalityRelation(l, tuple(rows))
    assert r.rows[m.zero] == l.full_mask, "{0} must be related to every subspace"
    assert is_lattice_locality(r).holds, "transferred relation is not a lattice locality"
    return r


def lattice_to_vs_locality(r: LocalityRelation, m: SubspaceLatticeModel) -> VectorLocality:
    """``v1 ⊤ v2`` iff ``K v1 ⊤ K v2``."""
    if r.n != len(m.subspaces):
        raise DimensionMismatch("relation does not live on this subspace lattice")
    ok = is_lattice_locality(r)
    if not ok.holds:
        raise PreconditionFailed("not a lattice locality", witness=ok.witness)
    if r.rows[m.zero] != m.lattice.full_mask:
        raise PreconditionFailed("{0} must be related to every subspace")
    line = m.line_of
    size = len(line)
    rows = tuple(sum(1 << j for j in range(size) if r.rows[line[i]] >> line[j] & 1) for i in range(size))
    return VectorLocality(m.q, m.n, rows)


# round trips -------------------------------------------------------------------

def all_form_localities(q: int, n: int) -> list[VectorLocality]:
    out = {}
    for entries in product(range(q), repeat=n * n):
        matrix = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        loc = form_locality(BilinearForm(q, n, matrix))
        out.setdefault(loc.rows, loc)
    return [out[k] for k in sorted(out)]


@dataclass
class VsRoundTripReport:
    q: int
    n: int
    vector_checked: int
    lattice_checked: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def default_battery(m: SubspaceLatticeModel) -> list[VectorLocality]:
    battery = all_form_localities(m.q, m.n)
    if m.n == 3:
        battery.append(paper_fixture(m.q))
    battery.append(VectorLocality.from_predicate(m.q, m.n, lambda u, w: True))
    return battery


def roundtrip_vs_lattice(
    m: SubspaceLatticeModel,
    battery: list[VectorLocality] | None = None,
    lattice_battery: list[LocalityRelation] | None = None,
) -> VsRoundTripReport:
    """Both composites of the vector/lattice transfer are identities, with the polar identities pointwise."""
    battery = default_battery(m) if battery is None else battery
    failures = []
    images = []
    l = m.lattice
    for v in battery:
        r = vs_to_lattice_locality(v, m)
        images.append(r)
        if lattice_to_vs_locality(r, m).rows != v.rows:
            failures.append(("psi(phi(v)) != v", v.rows))
        for i, u in enumerate(m.subspaces):
            pol = m.index_of_mask(v.polar_mask(u.mask))
            if r.rows[i] != l.down[pol]:
                failures.append(("U^T_VG != down(U^T_V)", i))
    if lattice_battery is None:
        lattice_battery = images + [
            LocalityRelation(l, tuple(l.down[o.psi[a]] for a in range(l.n)))
            for o in enumerate_orthocomplementations(l)
        ]
    for r in lattice_battery:
        v = lattice_to_vs_locality(r, m)
        if vs_to_lattice_locality(v, m).rows != r.rows:
            failures.append(("phi(psi(r)) != r", r.rows))
        for i, u in enumerate(m.subspaces):
            g = greatest(l.poset, r.rows[i])
            if g is None or v.polar_mask(u.mask) != m.subspaces[g].mask:
                failures.append(("X^T_GV != grt((KX)^T_G)", i))
    return VsRoundTripReport(m.q, m.n, len(battery), len(lattice_battery), failures)


# non-degeneracy -----------------------------------------------------------------

class Nondegeneracy(tuple):
    """``(nondegenerate, strongly)``."""

    def __new__(cls, nondegenerate: bool, strongly: bool):
        return super().__new__(cls, (nondegenerate, strongly))

    @property
    def nondegenerate(self) -> bool:
        return self[0]

    @property
    def strongly(self) -> bool:
        return self[1]


def vs_nondegeneracy(v: VectorLocality) -> Nondegeneracy:
    nondeg = not v.isotropic
    m = v.model
    strongly = nondeg and all(
        v.polar_mask(u.mask) != 1 for u in m.subspaces if u.dim < m.n
    )
    if strongly:
        for u in m.subspaces:
            pol = v.polar_subspace(u)
            assert u.dim + pol.dim == m.n and u.mask & pol.mask == 1, "V != U ⊕ U^T"
    return Nondegeneracy(nondeg, strongly)


@dataclass
class VGV2Report:
    nondegenerate: bool
    strongly: bool
    lattice_locality: bool
    separating_property: bool
    strongly_separating: bool
    orthocomplementation: Orthocomplementation | None = None

    @property
    def clause_a(self) -> bool:
        return self.nondegenerate == (self.lattice_locality and self.separating_property)

    @property
    def clause_b(self) -> bool:
        return self.strongly == self.strongly_separating


def check_prop_VGV2(v: VectorLocality, m: SubspaceLatticeModel | None = None) -> VGV2Report:
    """Compare vector non-degeneracy with separation of the transferred lattice relation."""
    m = m or v.model
    _check_model(v, m)
    nd = vs_nondegeneracy(v)
    r = vs_to_lattice_locality(v, m)
    l = m.lattice
    ll = is_lattice_locality(r).holds
    sep_prop = all(l.meet[a][b] == l.bottom for a in range(r.n) for b in bits(r.rows[a]))
    strongly_sep = ll and passes_chain(r)
    ortho = None
    if nd.strongly:
        psi = [m.index_of(v.polar_subspace(u)) for u in m.subspaces]
        ortho = validate_orthocomplementation(l, psi)
    return VGV2Report(nd.nondegenerate, nd.strongly, ll, sep_prop, strongly_sep, ortho)


# locality bases ---------------------------------------------------------------------

def is_locality_basis(v: VectorLocality, basis: Sequence[Sequence[int]]) -> bool:
    vecs = [tuple(x % v.q for x in b) for b in basis]
    if len(vecs) != v.n or any(len(b) != v.n for b in vecs) or rank(vecs, v.q) != v.n:
        return False
    return all(v.related(vecs[i], vecs[j]) for i in range(v.n) for j in range(v.n) if i != j)


def _leading(vec: Vector) -> int:
    return next(x for x in vec if x)


def locality_basis_gram_schmidt(v: VectorLocality, input_basis: Sequence[Sequence[int]]) -> list[Vector]:
    """Turn ``input_basis`` into a locality basis, one flag step at a time.

    ``u_1 = e_1``; ``u_{k+1}`` is taken from ``W_k^⊤ ∩ W_{k+1}`` where
    ``W_k = span(e_1..e_k)``: the smallest-index nonzero vector there whose
    first nonzero coordinate is 1.
    """
    if not vs_nondegeneracy(v).strongly:
        raise PreconditionFailed("locality is not strongly non-degenerate")
    es = [tuple(x % v.q for x in e) for e in input_basis]
    if len(es) != v.n or any(len(e) != v.n for e in es) or rank(es, v.q) != v.n:
        raise NotABasis("input vectors do not form a basis", witness=tuple(es))
    q, n = v.q, v.n
    out = [es[0]]
    for k in range(1, n):
        w_k = Subspace.span(es[:k], q, n)
        w_next = Subspace.span(es[: k + 1], q, n)
        candidates = v.polar_mask(w_k.mask) & w_next.mask & ~1
        pick = next(i for i in bits(candidates) if _leading(index_vector(i, q, n)) == 1)
        out.append(index_vector(pick, q, n))
        assert Subspace.span(out, q, n) == w_next, "span(u_1..u_k) != span(e_1..e_k)"
    assert is_locality_basis(v, out)
    return out


def count_locality_bases(v: VectorLocality) -> int:
    """Number of unordered locality bases with every vector normalized to leading coefficient 1."""
    q, n = v.q, v.n
    normalized = [i for i in range(1, q ** n) if _leading(index_vector(i, q, n)) == 1]
    _caps.require(len(normalized), 400, "locality basis count")
    total = 0
    for combo in combinations(normalized, n):
        if all(v.rows[a] >> b & 1 for a in combo for b in combo if a != b):
            if rank([index_vector(i, q, n) for i in combo], q) == n:
                total += 1
    return total


# planes -------------------------------------------------------------------------

def fixed_point_free_involutions(k: int) -> int:
    """``(k-1)!!`` for even ``k``, 0 for odd ``k``."""
    if k % 2:
        return 0
    return prod(range(k - 1, 0, -2))


def classify_plane_orthocomplementations(q: int) -> list[Orthocomplementation]:
    _caps.require(q, _caps.PLANE_Q_CAP, "plane field size")
    m = enumerate_subspaces(q, 2)
    found = enumerate_orthocomplementations(m.lattice)
    lines = [i for i, s in enumerate(m.subspaces) if s.dim == 1]
    for o in found:
        assert all(o.psi[x] in lines and o.psi[x] != x for x in lines)
    assert len(found) == fixed_point_free_involutions(len(lines)), "plane count mismatch"
    return found

