"""Lattices with explicit meet/join tables and the structural checkers.

Every checker scans triples in lexicographic element order and reports the
first counterexample it meets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations, product
from typing import NamedTuple, Sequence

from .errors import NotALattice
from .order import ElementSet, Poset, bits, interval, mask_of


@dataclass(frozen=True)
class Lattice:
    poset: Poset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self):
        return self.poset.labels

    def le(self, a: int, b: int) -> bool:
        return self.poset.leq[a][b]

    @property
    def down(self) -> tuple[int, ...]:
        return self.poset.down

    @property
    def up(self) -> tuple[int, ...]:
        return self.poset.up

    @property
    def full_mask(self) -> int:
        return self.poset.full_mask

    def label(self, i: int) -> str:
        return self.poset.label(i)

    def index(self, label: str) -> int:
        return self.poset.index(label)

    def oplus(self, a: int, b: int) -> int | None:
        """``a ⊕ b``: the join of a disjoint pair, ``None`` when ``a ∧ b != 0``."""
        return self.join[a][b] if self.meet[a][b] == self.bottom else None

    def join_all(self, mask: int) -> int:
        acc = self.bottom
        for i in bits(mask):
            acc = self.join[acc][i]
        return acc

    def meet_all(self, mask: int) -> int:
        acc = self.top
        for i in bits(mask):
            acc = self.meet[acc][i]
        return acc

    @cached_property
    def _atomicity(self) -> "Atomicity":
        return _compute_atomicity(self)

    @cached_property
    def atom_mask(self) -> int:
        b = self.bottom
        return mask_of(x for x in range(self.n) if x != b and self.down[x] == (1 << x) | (1 << b))


def build_lattice(p: Poset) -> Lattice:
    """Fill meet and join tables from the order, or raise :class:`NotALattice`.

    The join of ``a`` and ``b`` is the element whose up-set equals the set of
    common upper bounds, so both tables come from dictionary lookups.
    """
    by_up = {m: i for i, m in enumerate(p.up)}
    by_down = {m: i for i, m in enumerate(p.down)}
    n = p.n
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = by_down.get(p.down[a] & p.down[b])
            if m is None:
                raise NotALattice(f"{p.label(a)} and {p.label(b)} have no meet", witness=((a, b), "MissingMeet"))
            j = by_up.get(p.up[a] & p.up[b])
            if j is None:
                raise NotALattice(f"{p.label(a)} and {p.label(b)} have no join", witness=((a, b), "MissingJoin"))
            join[a][b] = join[b][a] = j
            meet[a][b] = meet[b][a] = m
    # a finite lattice is bounded; folding the tables finds the bounds
    bottom = top = 0
    for i in range(n):
        bottom = meet[bottom][i]
        top = join[top][i]
    return Lattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), bottom, top)


def lattice_from_covers(n: int, covers, labels=None) -> Lattice:
    return build_lattice(Poset.from_covers(n, covers, labels))


def check_lattice_axioms(l: Lattice) -> tuple | None:
    """First failing (axiom, witness) among the table laws, or ``None``."""
    n, m, j = l.n, l.meet, l.join
    for a, b in product(range(n), repeat=2):
        if m[a][b] != m[b][a] or j[a][b] != j[b][a]:
            return ("commutative", (a, b))
        if m[a][a] != a or j[a][a] != a:
            return ("idempotent", (a,))
        if m[a][j[a][b]] != a or j[a][m[a][b]] != a:
            return ("absorptive", (a, b))
    for a, b, c in product(range(n), repeat=3):
        if m[a][m[b][c]] != m[m[a][b]][c] or j[a][j[b][c]] != j[j[a][b]][c]:
            return ("associative", (a, b, c))
    for a1, b1, a2, b2 in product(range(n), repeat=4):
        if l.le(a1, b1) and l.le(a2, b2):
            if not l.le(m[a1][a2], m[b1][b2]) or not l.le(j[a1][a2], j[b1][b2]):
                return ("monotone", (a1, b1, a2, b2))
    if any(not l.le(l.bottom, x) or not l.le(x, l.top) for x in range(n)):
        return ("bounds", (l.bottom, l.top))
    return None


class Check(NamedTuple):
    holds: bool
    witness: tuple | None = None


def is_distributive(l: Lattice) -> Check:
    m, j = l.meet, l.join
    first = None
    dual_first = None
    for a, b, c in product(range(l.n), repeat=3):
        if first is None and m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
            first = (a, b, c)
        if dual_first is None and j[a][m[b][c]] != m[j[a][b]][j[a][c]]:
            dual_first = (a, b, c)
        if first is not None and dual_first is not None:
            break
    assert (first is None) == (dual_first is None), "distributive law and its dual disagree"
    return Check(first is None, first)


def is_modular(l: Lattice) -> Check:
    m, j = l.meet, l.join
    for a, b, c in product(range(l.n), repeat=3):
        if l.le(c, a) and j[m[a][b]][c] != m[a][j[b][c]]:
            return Check(False, (a, b, c))
    return Check(True)


class Cancellation(NamedTuple):
    cancellation: bool
    modular_cancellation: bool
    witness: tuple | None = None
    modular_witness: tuple | None = None


def cancellation_laws(l: Lattice) -> Cancellation:
    m, j = l.meet, l.join
    plain = modular = None
    for a, b, c in product(range(l.n), repeat=3):
        if a != b and m[a][c] == m[b][c] and j[a][c] == j[b][c]:
            if plain is None:
                plain = (a, b, c)
            if modular is None and l.le(a, b):
                modular = (a, b, c)
                break
    return Cancellation(plain is None, modular is None, plain, modular)


class SublatticeKind(Enum):
    PENTAGON = "pentagon"
    DIAMOND = "diamond"


@dataclass(frozen=True)
class SublatticeWitness:
    """Roles follow the figures: pentagon ``(0, b1, b2, c, 1)``, diamond ``(0, a, b, c, 1)``."""

    kind: SublatticeKind
    elements: tuple[int, int, int, int, int]


def _five_roles(l: Lattice, five: Sequence[int]):
    """Classify a meet/join-closed 5-subset as pentagon or diamond, returning roles."""
    lo = next((x for x in five if all(l.le(x, y) for y in five)), None)
    hi = next((x for x in five if all(l.le(y, x) for y in five)), None)
    if lo is None or hi is None:
        return None
    mid = [x for x in five if x not in (lo, hi)]
    comparable = [(x, y) for x, y in combinations(mid, 2) if l.le(x, y) or l.le(y, x)]
    if not comparable:
        return SublatticeKind.DIAMOND, (lo, *mid, hi)
    if len(comparable) == 1:
        x, y = comparable[0]
        b1, b2 = (x, y) if l.le(x, y) else (y, x)
        (c,) = [z for z in mid if z not in (x, y)]
        return SublatticeKind.PENTAGON, (lo, b1, b2, c, hi)
    return None


def find_forbidden_sublattice(l: Lattice, kind: SublatticeKind) -> SublatticeWitness | None:
    m, j = l.meet, l.join
    for five in combinations(range(l.n), 5):
        inside = set(five)
        if any(m[x][y] not in inside or j[x][y] not in inside for x, y in combinations(five, 2)):
            continue
        found = _five_roles(l, five)
        if found is not None and found[0] is kind:
            return SublatticeWitness(kind, found[1])
    return None


def complements_of(l: Lattice, a: int) -> ElementSet:
    return ElementSet.of(l.n, (x for x in range(l.n) if l.meet[a][x] == l.bottom and l.join[a][x] == l.top))


def _interval_complemented(l: Lattice, lo: int, hi: int) -> bool:
    span = interval(l.poset, lo, hi)
    members = list(span)
    return all(any(l.meet[x][y] == lo and l.join[x][y] == hi for y in members) for x in members)


class Complementedness(NamedTuple):
    complemented: bool
    sectionally: bool
    relatively: bool


def complementedness(l: Lattice) -> Complementedness:
    complemented = _interval_complemented(l, l.bottom, l.top)
    sectionally = all(_interval_complemented(l, l.bottom, b) for b in range(l.n))
    relatively = all(
        _interval_complemented(l, a, b) for a in range(l.n) for b in range(l.n) if l.le(a, b)
    )
    return Complementedness(complemented, sectionally, relatively)


class Atomicity(NamedTuple):
    atomic: bool
    atomistic: bool
    complete: bool


COMPLETENESS_SCAN_CAP = 20


def atomicity(l: Lattice) -> Atomicity:
    # the completeness scan is exponential in n, so it is computed once per lattice
    return l._atomicity


def _compute_atomicity(l: Lattice) -> Atomicity:
    atoms = l.atom_mask
    atomic = all(l.down[x] & atoms for x in range(l.n) if x != l.bottom)
    atomistic = atomic and all(l.join_all(l.down[x] & atoms) == x for x in range(l.n))
    if l.n > COMPLETENESS_SCAN_CAP:
        complete = True
    else:
        complete = all(_has_sup_and_inf(l, s) for s in range(1 << l.n))
    return Atomicity(atomic, atomistic, complete)


def _has_sup_and_inf(l: Lattice, s: int) -> bool:
    upper = l.full_mask
    lower = l.full_mask
    for i in bits(s):
        upper &= l.up[i]
        lower &= l.down[i]
    sup = next((u for u in bits(upper) if upper & ~l.up[u] == 0), None)
    inf = next((d for d in bits(lower) if lower & ~l.down[d] == 0), None)
    return sup is not None and inf is not None


def interval_lattice(l: Lattice, a: int, b: int) -> Lattice:
    members = interval(l.poset, a, b).to_list()
    return build_lattice(l.poset.induced(members))
