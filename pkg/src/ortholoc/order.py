"""Finite posets on dense element indices ``0..n-1``.

The order is stored as the full reflexive-transitive matrix; every set of
elements is carried as an int bitmask wrapped in :class:`ElementSet`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import _caps
from .errors import (
    AntisymmetryViolation,
    IndexOutOfRange,
    NoBottom,
    NotComparable,
    ReflexivityViolation,
    TransitivityViolation,
)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class ElementSet:
    n: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise IndexOutOfRange(f"membership outside 0..{self.n - 1}", witness=self.mask)

    @classmethod
    def of(cls, n: int, items: Iterable[int]) -> "ElementSet":
        return cls(n, mask_of(items))

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(n, (1 << n) - 1)

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, self.mask & other.mask)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, self.mask | other.mask)

    def issubset(self, other: "ElementSet") -> bool:
        return self.mask & ~other.mask == 0

    def to_list(self) -> list[int]:
        return list(bits(self.mask))

    def __repr__(self) -> str:
        return f"ElementSet({self.to_list()})"


@dataclass(frozen=True)
class Poset:
    """A finite partial order; ``leq[i][j]`` means ``i <= j``.

    Construct through :func:`validate_poset` or :meth:`from_covers`; the
    constructor itself trusts its input.
    """

    n: int
    leq: tuple[tuple[bool, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], labels=None) -> "Poset":
        pairs = list(covers)
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise IndexOutOfRange(f"cover ({a}, {b}) outside 0..{n - 1}", witness=(a, b))
        return validate_poset(_closure(n, pairs), labels)

    @classmethod
    def from_up_masks(cls, up: Sequence[int], labels=None) -> "Poset":
        n = len(up)
        return cls(n, tuple(tuple(bool(up[i] >> j & 1) for j in range(n)) for i in range(n)), labels)

    # bitmask views
    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[i]`` is the mask of all ``j`` with ``i <= j``."""
        return tuple(mask_of(j for j in range(self.n) if self.leq[i][j]) for i in range(self.n))

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(mask_of(j for j in range(self.n) if self.leq[j][i]) for i in range(self.n))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def index(self, label: str) -> int:
        if not self.labels:
            raise KeyError(label)
        return self.labels.index(label)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each element."""
        h = [0] * self.n
        for i in sorted(range(self.n), key=lambda x: len(ElementSet(self.n, self.down[x]))):
            below = [h[j] + 1 for j in bits(self.down[i]) if j != i]
            h[i] = max(below, default=0)
        return tuple(h)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        d = [0] * self.n
        for i in sorted(range(self.n), key=lambda x: len(ElementSet(self.n, self.up[x]))):
            above = [d[j] + 1 for j in bits(self.up[i]) if j != i]
            d[i] = max(above, default=0)
        return tuple(d)

    def permuted(self, perm: Sequence[int]) -> "Poset":
        """The isomorphic poset in which element ``i`` is renamed ``perm[i]``."""
        inv = [0] * self.n
        for i, p in enumerate(perm):
            inv[p] = i
        leq = tuple(tuple(self.leq[inv[a]][inv[b]] for b in range(self.n)) for a in range(self.n))
        labels = tuple(self.labels[inv[a]] for a in range(self.n)) if self.labels else None
        return Poset(self.n, leq, labels)

    def induced(self, elements: Sequence[int]) -> "Poset":
        """Sub-poset on ``elements``; new index ``k`` stands for ``elements[k]``."""
        leq = tuple(tuple(self.leq[a][b] for b in elements) for a in elements)
        labels = tuple(self.label(a) for a in elements) if self.labels else None
        return Poset(len(elements), leq, labels)


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        up[a] |= 1 << b
    # Warshall on bitmask rows
    for k in range(n):
        bk = 1 << k
        for i in range(n):
            if up[i] & bk:
                up[i] |= up[k]
    return [[bool(up[i] >> j & 1) for j in range(n)] for i in range(n)]


def validate_poset(matrix: Sequence[Sequence[bool]], labels: Sequence[str] | None = None) -> Poset:
    n = len(matrix)
    if n == 0:
        raise ValueError("empty poset")
    if any(len(row) != n for row in matrix):
        raise ValueError("order matrix must be square")
    leq = tuple(tuple(bool(x) for x in row) for row in matrix)
    for i in range(n):
        if not leq[i][i]:
            raise ReflexivityViolation(f"{i} is not <= itself", witness=(i,))
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise AntisymmetryViolation(f"{i} <= {j} <= {i}", witness=(i, j))
    for i in range(n):
        for j in range(n):
            if not leq[i][j]:
                continue
            for k in range(n):
                if leq[j][k] and not leq[i][k]:
                    raise TransitivityViolation(f"{i} <= {j} <= {k} but not {i} <= {k}", witness=(i, j, k))
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError("labels length does not match n")
    return Poset(n, leq, labels)


def _check_index(p: Poset, a: int) -> None:
    if not 0 <= a < p.n:
        raise IndexOutOfRange(f"element {a} outside 0..{p.n - 1}", witness=a)


def down_set(p: Poset, a: int) -> ElementSet:
    _check_index(p, a)
    return ElementSet(p.n, p.down[a])


def up_set(p: Poset, a: int) -> ElementSet:
    _check_index(p, a)
    return ElementSet(p.n, p.up[a])


def is_down_closed(p: Poset, mask: int) -> bool:
    for i in bits(mask):
        if p.down[i] & ~mask:
            return False
    return True


def is_poset_ideal(p: Poset, s: ElementSet) -> bool:
    return is_down_closed(p, s.mask)


def interval(p: Poset, a: int, b: int) -> ElementSet:
    _check_index(p, a)
    _check_index(p, b)
    if not p.leq[a][b]:
        raise NotComparable(f"{a} is not <= {b}", witness=(a, b))
    return ElementSet(p.n, p.up[a] & p.down[b])


def bounds(p: Poset) -> tuple[int | None, int | None]:
    bottom = next((i for i in range(p.n) if p.up[i] == p.full_mask), None)
    top = next((i for i in range(p.n) if p.down[i] == p.full_mask), None)
    return bottom, top


def atoms(p: Poset) -> ElementSet:
    bottom, _ = bounds(p)
    if bottom is None:
        raise NoBottom("poset has no least element")
    found = [x for x in range(p.n) if x != bottom and p.down[x] == (1 << x) | (1 << bottom)]
    return ElementSet.of(p.n, found)


def covers(p: Poset) -> list[tuple[int, int]]:
    out = []
    for x in range(p.n):
        strictly_above = p.up[x] & ~(1 << x)
        for y in bits(strictly_above):
            between = strictly_above & p.down[y] & ~(1 << y)
            if not between:
                out.append((x, y))
    return out


def greatest(p: Poset, mask: int) -> int | None:
    """The greatest element of the set ``mask``, if it has one."""
    for g in bits(mask):
        if mask & ~p.down[g] == 0:
            return g
    return None


def least(p: Poset, mask: int) -> int | None:
    for g in bits(mask):
        if mask & ~p.up[g] == 0:
            return g
    return None


def maximal(p: Poset, mask: int) -> list[int]:
    return [g for g in bits(mask) if p.up[g] & mask == 1 << g]


# canonical forms ------------------------------------------------------------

def _refine(p: Poset, colors: list[int]) -> list[int]:
    """Equitable refinement of an ordered coloring by counts of colors strictly below/above."""
    n = p.n
    while True:
        sigs = []
        for v in range(n):
            below = sorted(colors[u] for u in bits(p.down[v]) if u != v)
            above = sorted(colors[u] for u in bits(p.up[v]) if u != v)
            sigs.append((colors[v], tuple(below), tuple(above)))
        order = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(order)}
        new = [rank[s] for s in sigs]
        if len(order) == len(set(colors)):
            return new
        colors = new


def _encode(p: Poset, perm: Sequence[int]) -> bytes:
    inv = [0] * p.n
    for i, c in enumerate(perm):
        inv[c] = i
    out = bytearray()
    for a in range(p.n):
        row = 0
        for b in range(p.n):
            if p.leq[inv[a]][inv[b]]:
                row |= 1 << b
        out += row.to_bytes((p.n + 7) // 8 or 1, "big")
    return bytes([p.n]) + bytes(out)


def canonical_form(p: Poset, cap: int | None = None) -> bytes:
    """Isomorphism-invariant byte encoding of ``p``.

    Minimum order-matrix encoding over the permutations compatible with an
    individualization/refinement search started from the (height, depth)
    rank coloring. Equal bytes iff the posets are isomorphic.
    """
    _caps.require(p.n, _caps.CANONICAL_CAP if cap is None else cap, "canonical_form")
    start_sigs = [(p.heights[v], p.depths[v]) for v in range(p.n)]
    ranks = {s: i for i, s in enumerate(sorted(set(start_sigs)))}
    colors = _refine(p, [ranks[s] for s in start_sigs])
    best: list[bytes] = []

    def search(colors: list[int]) -> None:
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = next((c for c in sorted(counts) if counts[c] > 1), None)
        if target is None:
            code = _encode(p, colors)
            if not best or code < best[0]:
                best[:] = [code]
            return
        for v in range(p.n):
            if colors[v] != target:
                continue
            # give v a fresh color just below its cell, keep everything else ordered
            individual = [2 * c + (0 if (u == v) else 1) if c == target else 2 * c for u, c in enumerate(colors)]
            relabel = {c: i for i, c in enumerate(sorted(set(individual)))}
            search(_refine(p, [relabel[c] for c in individual]))

    search(colors)
    return best[0]
