"""Weak correspondences: antitone maps on bounded-below posets, and atom relations.

The statement exercised here: on a poset with bottom, poset
localities with ``0 ⊤ x`` for all ``x`` and greatest elements in every polar
match antitone maps with ``x <= x''``. On a complete atomistic lattice those
localities also match symmetric relations on the atoms whose polars are of
the form ``P_a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import _caps
from .errors import ConditionThreeFailed, NotAntitone, NotAtomistic, PreconditionFailed
from .lattice import Lattice, atomicity
from .locality import Host, LocalityRelation, is_lattice_locality, is_poset_locality, order_of
from .order import bits, bounds, greatest, least


@dataclass(frozen=True)
class AntitoneMap:
    host: Host = field(repr=False)
    map: tuple[int, ...]

    def __post_init__(self):
        p = order_of(self.host)
        if bounds(p)[0] is None:
            raise PreconditionFailed("the poset needs a bottom")
        m = self.map
        if len(m) != p.n:
            raise ValueError("map length does not match the poset")
        for x in range(p.n):
            for y in bits(p.up[x]):
                if not p.leq[m[y]][m[x]]:
                    raise NotAntitone(f"{x} <= {y} but {y}' !<= {x}'", witness=(x, y))
        for x in range(p.n):
            if not p.leq[x][m[m[x]]]:
                raise PreconditionFailed(f"{x} !<= {x}''", witness=(x,))


def _class_one_failure(r: LocalityRelation) -> tuple | None:
    p = r.order
    bottom = bounds(p)[0]
    if bottom is None:
        return ("no bottom",)
    if not is_poset_locality(r):
        return ("not a poset locality",)
    if r.rows[bottom] != p.full_mask:
        return ("0 not related to everything", bottom)
    for x in range(r.n):
        if greatest(p, r.rows[x]) is None:
            return ("polar without greatest element", x)
    return None


def is_class_one(r: LocalityRelation) -> bool:
    """Poset locality, ``0 ⊤ x`` for all ``x``, and ``grt(x^⊤)`` always exists."""
    return _class_one_failure(r) is None


def antitone_from_poset_locality(r: LocalityRelation) -> AntitoneMap:
    why = _class_one_failure(r)
    if why is not None:
        raise PreconditionFailed(why[0], witness=why)
    p = r.order
    return AntitoneMap(r.host, tuple(greatest(p, r.rows[x]) for x in range(r.n)))


def poset_locality_from_antitone(m: AntitoneMap) -> LocalityRelation:
    p = order_of(m.host)
    r = LocalityRelation(m.host, tuple(p.down[m.map[x]] for x in range(p.n)))
    assert is_class_one(r), "x ⊤ y iff y <= x' left the class"
    assert antitone_from_poset_locality(r).map == m.map, "antitone map does not round-trip"
    return r


def enumerate_antitone_maps(host: Host) -> Iterator[AntitoneMap]:
    """Every antitone map with ``x <= x''``, by backtracking in element order."""
    p = order_of(host)
    n = p.n
    m = [-1] * n

    def ok_so_far(x: int) -> bool:
        for y in range(x):
            if p.leq[x][y] and not p.leq[m[y]][m[x]]:
                return False
            if p.leq[y][x] and not p.leq[m[x]][m[y]]:
                return False
        return True

    def extend(x: int) -> Iterator[tuple[int, ...]]:
        if x == n:
            if all(p.leq[z][m[m[z]]] for z in range(n)):
                yield tuple(m)
            return
        for v in range(n):
            m[x] = v
            if ok_so_far(x):
                yield from extend(x + 1)
        m[x] = -1

    for image in extend(0):
        yield AntitoneMap(host, image)


def sup_inf_failure(m: AntitoneMap) -> int | None:
    """First subset mask ``X`` with a supremum where ``(sup X)' != inf {x' | x in X}``."""
    p = order_of(m.host)
    for X in range(1 << p.n):
        upper = p.full_mask
        for x in bits(X):
            upper &= p.up[x]
        sup = least(p, upper)
        if sup is None:
            continue
        lower = p.full_mask
        for x in bits(X):
            lower &= p.down[m.map[x]]
        inf = greatest(p, lower)
        if inf is None or inf != m.map[sup]:
            return X
    return None


# atoms -----------------------------------------------------------------------

@dataclass(frozen=True)
class AtomRelation:
    """Symmetric relation on the atoms of ``host``; ``rows[k]`` uses lattice element masks."""

    host: Lattice = field(repr=False)
    atoms: tuple[int, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        l = self.host
        if self.atoms != tuple(bits(l.atom_mask)):
            raise ValueError("atoms must list the lattice atoms in order")
        allowed = l.atom_mask
        for k, p in enumerate(self.atoms):
            if self.rows[k] & ~allowed:
                raise ValueError(f"row of atom {p} leaves the atom set")
            for q in bits(self.rows[k]):
                if not self.rows[self.atoms.index(q)] >> p & 1:
                    raise ValueError(f"atom relation not symmetric at ({p}, {q})")
        self.witness_elements()

    def related(self, p: int, q: int) -> bool:
        return bool(self.rows[self.atoms.index(p)] >> q & 1)

    def witness_elements(self) -> tuple[int, ...]:
        """For each atom ``p`` the unique ``a`` with ``p^⊤P = P_a``."""
        l = self.host
        out = []
        for k, p in enumerate(self.atoms):
            matches = [a for a in range(l.n) if l.down[a] & l.atom_mask == self.rows[k]]
            if len(matches) != 1:
                reason = "no element" if not matches else "several elements"
                raise ConditionThreeFailed(f"{reason} a with p^T = P_a for atom {p}", witness=(p, tuple(matches)))
            out.append(matches[0])
        return tuple(out)


def _require_atomistic(l: Lattice) -> None:
    at = atomicity(l)
    if not (at.atomistic and at.complete):
        raise NotAtomistic("host lattice must be complete and atomistic")


def atom_relation_from_lattice_locality(r: LocalityRelation) -> AtomRelation:
    l = r.host
    if not isinstance(l, Lattice):
        raise PreconditionFailed("needs a lattice host")
    _require_atomistic(l)
    why = _class_one_failure(r)
    if why is not None:
        raise PreconditionFailed(why[0], witness=why)
    atoms = tuple(bits(l.atom_mask))
    return AtomRelation(l, atoms, tuple(r.rows[p] & l.atom_mask for p in atoms))


def lattice_locality_from_atom_relation(ar: AtomRelation) -> LocalityRelation:
    """``a ⊤ b`` iff one side is 0 or every atom below ``a`` is related to every atom below ``b``."""
    l = ar.host
    _require_atomistic(l)
    # atoms related to all atoms below a
    reach = []
    for a in range(l.n):
        acc = l.atom_mask
        for p in bits(l.down[a] & l.atom_mask):
            acc &= ar.rows[ar.atoms.index(p)]
        reach.append(acc)
    rows = []
    for a in range(l.n):
        row = 0
        for b in range(l.n):
            if a == l.bottom or b == l.bottom or l.down[b] & l.atom_mask & ~reach[a] == 0:
                row |= 1 << b
        rows.append(row)
    r = LocalityRelation(l, tuple(rows))
    assert is_class_one(r), "extension is not in the weak correspondence class"
    assert tuple(r.rows[p] & l.atom_mask for p in ar.atoms) == ar.rows, "restriction does not recover the atom relation"
    return r


def enumerate_atom_relations(l: Lattice) -> Iterator[AtomRelation]:
    """All symmetric atom relations satisfying condition (3)."""
    _require_atomistic(l)
    atoms = tuple(bits(l.atom_mask))
    k = len(atoms)
    cells = [(i, j) for i in range(k) for j in range(i, k)]
    for code in range(1 << len(cells)):
        rows = [0] * k
        for c, (i, j) in enumerate(cells):
            if code >> c & 1:
                rows[i] |= 1 << atoms[j]
                rows[j] |= 1 << atoms[i]
        try:
            yield AtomRelation(l, atoms, tuple(rows))
        except ConditionThreeFailed:
            continue



@dataclass
class AppendixReport:
    num_antitone_maps: int
    antitone_roundtrip_ok: bool
    sup_inf_ok: bool
    atomistic: bool
    num_atom_relations: int | None
    atom_roundtrip_ok: bool | None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.antitone_roundtrip_ok and self.sup_inf_ok and self.atom_roundtrip_ok is not False

    def to_json(self) -> dict:
        return {
            "num_antitone_maps": self.num_antitone_maps,
            "antitone_roundtrip_ok": self.antitone_roundtrip_ok,
            "sup_inf_ok": self.sup_inf_ok,
            "atomistic": self.atomistic,
            "num_atom_relations": self.num_atom_relations,
            "atom_roundtrip_ok": self.atom_roundtrip_ok,
        }


ATOM_ENUMERATION_CAP = 5


def appendix_check(l: Lattice, extra: tuple[LocalityRelation, ...] = ()) -> AppendixReport:
    """Both weak correspondences on ``l``.

    Antitone maps are enumerated exhaustively; each is sent to its relation
    and back. On atomistic hosts with at most five atoms every atom relation
    satisfying condition (3) is extended and restricted; the qualifying
    relations obtained from antitone maps, plus any ``extra`` ones, are
    restricted and extended.
    """
    _caps.require(l.n, _caps.ENUMERATION_HARD_CAP, "appendix check")
    failures = []
    maps = list(enumerate_antitone_maps(l))
    relations = []
    for m in maps:
        r = poset_locality_from_antitone(m)
        if antitone_from_poset_locality(r).map != m.map:
            failures.append(("antitone", m.map))
        relations.append(r)
    sup_inf_ok = True
    for m in maps:
        if sup_inf_failure(m) is not None:
            sup_inf_ok = False
            failures.append(("sup/inf", m.map))
    at = atomicity(l)
    num_atom = None
    atom_ok = None
    if at.atomistic and at.complete:
        atom_ok = True
        if l.atom_mask.bit_count() <= ATOM_ENUMERATION_CAP:
            num_atom = 0
            for ar in enumerate_atom_relations(l):
                num_atom += 1
                back = atom_relation_from_lattice_locality(lattice_locality_from_atom_relation(ar))
                if back.rows != ar.rows:
                    atom_ok = False
                    failures.append(("atom restriction", ar.rows))
        for r in relations + list(extra):
            if not is_class_one(r) or not is_lattice_locality(r).holds:
                continue
            back = lattice_locality_from_atom_relation(atom_relation_from_lattice_locality(r))
            if back.rows != r.rows:
                atom_ok = False
                failures.append(("atom extension", r.rows))
    return AppendixReport(len(maps), not any(f[0] == "antitone" for f in failures), sup_inf_ok, at.atomistic, num_atom, atom_ok, failures)
