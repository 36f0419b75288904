"""Locality relations on posets and lattices.

A relation is stored as one bitmask row per element, ``rows[a]`` being the
polar ``a^⊤``. The checkers form a chain (poset locality, lattice locality,
separating, strongly separating); each later checker raises
:class:`PreconditionFailed` when an earlier link fails, unless called with
``relaxed=True``, which evaluates the definition on any symmetric relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Iterator, NamedTuple, Union

from . import _caps
from .errors import HostMismatch, NoGreatestElement, PreconditionFailed
from .lattice import Check, Lattice
from .order import ElementSet, Poset, bits, greatest, is_down_closed, maximal
from .search import antitone_involutions, involutions

Host = Union[Lattice, Poset]


def order_of(host: Host) -> Poset:
    return host.poset if isinstance(host, Lattice) else host


@dataclass(frozen=True)
class LocalityRelation:
    host: Host = field(repr=False)
    rows: tuple[int, ...]

    def __post_init__(self):
        n = order_of(self.host).n
        if len(self.rows) != n:
            raise ValueError(f"expected {n} rows, got {len(self.rows)}")
        for a in range(n):
            for b in bits(self.rows[a]):
                if b >= n:
                    raise ValueError(f"pair ({a}, {b}) outside the host")
                if not self.rows[b] >> a & 1:
                    raise ValueError(f"relation is not symmetric at ({a}, {b})")

    @classmethod
    def from_pairs(cls, host: Host, pairs) -> "LocalityRelation":
        """Symmetrizes: each ``(i, j)`` also adds ``(j, i)``."""
        n = order_of(host).n
        rows = [0] * n
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i}, {j}) outside 0..{n - 1}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(host, tuple(rows))

    @classmethod
    def from_predicate(cls, host: Host, related: Callable[[int, int], bool]) -> "LocalityRelation":
        n = order_of(host).n
        return cls(host, tuple(sum(1 << b for b in range(n) if related(a, b)) for a in range(n)))

    @classmethod
    def all_true(cls, host: Host) -> "LocalityRelation":
        n = order_of(host).n
        return cls(host, ((1 << n) - 1,) * n)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def order(self) -> Poset:
        return order_of(self.host)

    def related(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in bits(self.rows[a]) if a <= b]

    def polar_mask(self, mask: int) -> int:
        acc = (1 << self.n) - 1
        for x in bits(mask):
            acc &= self.rows[x]
        return acc

    @cached_property
    def double_polars(self) -> tuple[int, ...]:
        return tuple(self.polar_mask(self.rows[a]) for a in range(self.n))

    def same_as(self, other: "LocalityRelation") -> bool:
        return self.rows == other.rows

    def __eq__(self, other):
        if not isinstance(other, LocalityRelation):
            return NotImplemented
        return self.rows == other.rows and self.order.leq == other.order.leq

    def __hash__(self):
        return hash(self.rows)


def meet_disjointness(l: Lattice) -> LocalityRelation:
    """``a ⊤∧ b`` iff ``a ∧ b = 0``."""
    return LocalityRelation.from_predicate(l, lambda a, b: l.meet[a][b] == l.bottom)


def polar(r: LocalityRelation, s: ElementSet) -> ElementSet:
    return ElementSet(r.n, r.polar_mask(s.mask))


def kernel(r: LocalityRelation) -> ElementSet:
    return ElementSet.of(r.n, (a for a in range(r.n) if r.related(a, a)))


def _lattice(r: LocalityRelation) -> Lattice:
    if not isinstance(r.host, Lattice):
        raise PreconditionFailed("this check needs a lattice host")
    return r.host


# compatibility with the order ----------------------------------------------

class PosetLocality(NamedTuple):
    holds: bool
    antitone_witness: tuple | None
    ideal_witness: tuple | None
    double_polar_witness: tuple | None


def poset_locality_conditions(r: LocalityRelation) -> PosetLocality:
    """The three compatibility conditions, each with its own first witness."""
    p = r.order
    n = r.n
    antitone = None
    for a, b in product(range(n), repeat=2):
        if p.leq[a][b] and r.rows[b] & ~r.rows[a]:
            antitone = (a, b)
            break
    ideal = None
    for c in range(n):
        if not is_down_closed(p, r.rows[c]):
            x = next(x for x in bits(r.rows[c]) if p.down[x] & ~r.rows[c])
            ideal = (c, x, next(bits(p.down[x] & ~r.rows[c])))
            break
    double = None
    for a in range(n):
        missing = p.down[a] & ~r.double_polars[a]
        if missing:
            double = (a, next(bits(missing)))
            break
    holds = antitone is None
    assert holds == (ideal is None) == (double is None), "poset-locality conditions disagree"
    return PosetLocality(holds, antitone, ideal, double)


def is_poset_locality(r: LocalityRelation) -> bool:
    return poset_locality_conditions(r).holds


def lattice_ideal_failure(l: Lattice, mask: int) -> tuple | None:
    """Why ``mask`` is not a lattice ideal; the empty set is rejected."""
    if mask == 0:
        return ("empty",)
    for x in bits(mask):
        outside = l.down[x] & ~mask
        if outside:
            return ("not down-closed", x, next(bits(outside)))
    for x in bits(mask):
        for y in bits(mask):
            if y > x and not mask >> l.join[x][y] & 1:
                return ("not join-closed", x, y)
    return None


def is_lattice_locality(r: LocalityRelation) -> Check:
    l = _lattice(r)
    for a in range(r.n):
        why = lattice_ideal_failure(l, r.rows[a])
        if why is not None:
            return Check(False, (a, *why))
    return Check(True)


def check_join_polar(r: LocalityRelation) -> bool:
    """``(a ∨ b)^⊤ = a^⊤ ∩ b^⊤`` for all pairs, plus the empty join ``0^⊤ = L``."""
    l = _lattice(r)
    if not is_poset_locality(r):
        raise PreconditionFailed("not a poset locality")
    if r.rows[l.bottom] != l.full_mask:
        return False
    return all(
        r.rows[l.join[a][b]] == r.rows[a] & r.rows[b] for a in range(r.n) for b in range(a, r.n)
    )


# separation -------------------------------------------------------------------

def _require_lattice_locality(r: LocalityRelation) -> None:
    ok = is_lattice_locality(r)
    if not ok.holds:
        raise PreconditionFailed("not a lattice locality", witness=ok.witness)


def _no_greatest_witness(p: Poset, mask: int) -> tuple:
    tops = maximal(p, mask)
    return tuple(tops[:2]) if len(tops) >= 2 else tuple(tops)


def greatest_of_polar(r: LocalityRelation, a: int) -> int:
    p = r.order
    g = greatest(p, r.rows[a])
    if g is None:
        raise NoGreatestElement(f"polar of {p.label(a)} has no greatest element",
                                witness=_no_greatest_witness(p, r.rows[a]))
    if is_poset_locality(r):
        assert r.rows[g] == r.double_polars[a], "grt(S)^⊤ != S^⊤"
    return g


def is_separating(r: LocalityRelation, relaxed: bool = False) -> Check:
    l = _lattice(r)
    if not relaxed:
        _require_lattice_locality(r)
    for a in range(r.n):
        for b in bits(r.rows[a]):
            if l.meet[a][b] != l.bottom:
                return Check(False, ("meet", a, b))
    for a in range(r.n):
        if greatest(l.poset, r.rows[a]) is None:
            return Check(False, ("no greatest", a, *_no_greatest_witness(l.poset, r.rows[a])))
    return Check(True)


def is_strongly_separating(r: LocalityRelation, relaxed: bool = False) -> Check:
    l = _lattice(r)
    if not relaxed:
        sep = is_separating(r)
        if not sep.holds:
            raise PreconditionFailed("not separating", witness=sep.witness)
    first_c = first_c_prime = None
    for a in range(r.n):
        dp = r.double_polars[a]
        g = greatest(l.poset, dp)
        if first_c is None and g != a:
            first_c = (a, g)
        if first_c_prime is None and dp & ~l.down[a]:
            first_c_prime = (a, g)
    assert (first_c is None) == (first_c_prime is None), "conditions (c) and (c') disagree"
    return Check(first_c is None, first_c)


def is_nondegenerate(r: LocalityRelation, relaxed: bool = False) -> bool:
    l = _lattice(r)
    if not relaxed:
        _require_lattice_locality(r)
    self_related = all(a == l.bottom for a in range(r.n) if r.related(a, a))
    disjoint = all(l.meet[a][b] == l.bottom for a in range(r.n) for b in bits(r.rows[a]))
    if not relaxed:
        assert self_related == disjoint, "non-degeneracy formulations disagree"
    return self_related


class Closedness(NamedTuple):
    extreme: bool
    closedness: bool
    closednessweak: bool


def closedness_status(r: LocalityRelation, relaxed: bool = False) -> Closedness:
    l = _lattice(r)
    if not relaxed:
        sep = is_separating(r)
        if not sep.holds:
            raise PreconditionFailed("not separating", witness=sep.witness)
    zero_only = 1 << l.bottom
    extreme = all((r.rows[a] == zero_only) == (a == l.top) for a in range(r.n))
    closed = True
    for a in range(r.n):
        g = greatest(l.poset, r.rows[a])
        if g is None or l.oplus(a, g) != l.top:
            closed = False
            break
    weak = all((r.rows[a] == l.full_mask) == (a == l.bottom) for a in range(r.n))
    if not relaxed:
        assert extreme == closed, "extreme and closedness disagree on a separated locality"
        assert weak or not closed, "closedness without its weak form"
    return Closedness(extreme, closed, weak)


def intersect(r1: LocalityRelation, r2: LocalityRelation) -> LocalityRelation:
    if r1.order.leq != r2.order.leq:
        raise HostMismatch("relations live on different hosts")
    out = LocalityRelation(r1.host, tuple(a & b for a, b in zip(r1.rows, r2.rows)))
    if isinstance(r1.host, Lattice) and is_lattice_locality(r1).holds and is_lattice_locality(r2).holds:
        assert is_lattice_locality(out).holds, "intersection left the lattice localities"
    return out


# aggregated report ------------------------------------------------------------

FLAGS = (
    "poset_locality",
    "lattice_locality",
    "separating",
    "strongly_separating",
    "nondegenerate",
    "extreme",
    "closedness",
    "closednessweak",
)


@dataclass
class LocalityClass:
    flags: dict[str, bool]
    witnesses: dict[str, object]
    relaxed: bool = False

    def to_json(self) -> dict:
        return {
            "relaxed": self.relaxed,
            "flags": {k: self.flags[k] for k in FLAGS},
            "witnesses": {k: _jsonable(v) for k, v in sorted(self.witnesses.items())},
        }


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    return w


def classify(r: LocalityRelation, relaxed: bool = False) -> LocalityClass:
    """Evaluate every flag; each false flag gets a witness.

    Without ``relaxed``, a flag whose precondition fails is false with the
    witness ``("precondition", <failed flag>)``.
    """
    flags: dict[str, bool] = {}
    wit: dict[str, object] = {}
    pl = poset_locality_conditions(r)
    flags["poset_locality"] = pl.holds
    if not pl.holds:
        wit["poset_locality"] = pl.antitone_witness
    ll = is_lattice_locality(r)
    flags["lattice_locality"] = ll.holds
    if not ll.holds:
        wit["lattice_locality"] = ll.witness

    def gated(name: str, needs: str, fn):
        if not relaxed and not flags[needs]:
            flags[name] = False
            wit[name] = ("precondition", needs)
            return
        value, witness = fn()
        flags[name] = value
        if not value:
            wit[name] = witness

    gated("separating", "lattice_locality", lambda: tuple(is_separating(r, relaxed=True)))
    def strongly():
        # strongly separating includes separating, also in relaxed mode
        if not flags["separating"]:
            return False, ("separating",) + tuple(wit["separating"])
        return tuple(is_strongly_separating(r, relaxed=True))

    gated("strongly_separating", "separating", strongly)

    def nondeg():
        l = r.host
        bad = next((a for a in range(r.n) if r.related(a, a) and a != l.bottom), None)
        return bad is None, (bad,)

    gated("nondegenerate", "lattice_locality", nondeg)

    def closed_flags():
        return closedness_status(r, relaxed=True)

    if relaxed or flags["separating"]:
        c = closed_flags()
        for name in ("extreme", "closedness", "closednessweak"):
            flags[name] = getattr(c, name)
        l = r.host
        if not c.extreme:
            wit["extreme"] = next(
                (a,) for a in range(r.n) if (r.rows[a] == 1 << l.bottom) != (a == l.top)
            )
        if not c.closedness:
            wit["closedness"] = next(
                (a,) for a in range(r.n)
                if (g := greatest(l.poset, r.rows[a])) is None or l.oplus(a, g) != l.top
            )
        if not c.closednessweak:
            wit["closednessweak"] = next(
                (a,) for a in range(r.n) if (r.rows[a] == l.full_mask) != (a == l.bottom)
            )
    else:
        for name in ("extreme", "closedness", "closednessweak"):
            flags[name] = False
            wit[name] = ("precondition", "separating")
    return LocalityClass(flags, wit, relaxed)


# enumeration ------------------------------------------------------------------

def symmetric_relations(n: int) -> Iterator[tuple[int, ...]]:
    """All ``2**(n(n+1)/2)`` symmetric relations on ``range(n)`` as row tuples."""
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for code in range(1 << len(cells)):
        rows = [0] * n
        for k, (i, j) in enumerate(cells):
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield tuple(rows)


def random_symmetric_relation(n: int, rng: random.Random, density: float = 0.5) -> tuple[int, ...]:
    rows = [0] * n
    for i in range(n):
        for j in range(i, n):
            if rng.random() < density:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return tuple(rows)


def passes_chain(r: LocalityRelation) -> bool:
    """Poset locality, lattice locality, separating, strongly separating, in order."""
    if not is_poset_locality(r) or not is_lattice_locality(r).holds:
        return False
    if not is_separating(r).holds:
        return False
    return is_strongly_separating(r).holds


def relation_from_map(l: Lattice, psi) -> LocalityRelation | None:
    """``a ⊤ b`` iff ``b <= psi(a)``; ``None`` when that is not symmetric."""
    rows = tuple(l.down[psi[a]] for a in range(l.n))
    for a in range(l.n):
        for b in bits(rows[a]):
            if not rows[b] >> a & 1:
                return None
    return LocalityRelation(l, rows)


def enumerate_strongly_separating(l: Lattice, method: str = "psi") -> list[LocalityRelation]:
    """All strongly separating localities on ``l``, sorted by rows.

    ``method="psi"`` scans candidate involutions ``σ`` and keeps the relations
    ``b <= σ(a)`` that pass the full checker chain: every involution for
    ``n <= 8``, order-reversing ones beyond. ``method="blind"`` scans every
    symmetric relation and is the cross-check oracle for tiny lattices.
    """
    if method == "blind":
        _caps.require(l.n, _caps.BLIND_RELATION_CAP, "blind relation scan")
        found = [LocalityRelation(l, rows) for rows in symmetric_relations(l.n)]
        found = [r for r in found if passes_chain(r)]
    elif method == "psi":
        _caps.require(l.n, _caps.ORTHO_CAP, "strongly separating search")
        candidates = involutions(l.n) if l.n <= _caps.ENUMERATION_CAP else antitone_involutions(l)
        found = []
        for psi in candidates:
            r = relation_from_map(l, psi)
            if r is not None and passes_chain(r):
                found.append(r)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(found, key=lambda r: r.rows)
