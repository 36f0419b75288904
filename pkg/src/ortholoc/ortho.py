"""Orthocomplementations and their correspondence with strongly separating localities."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from . import _caps
from .errors import (
    NotAntitone,
    NotInvolutive,
    NotSeparating,
    OrtholocError,
    PreconditionFailed,
)
from .lattice import Lattice, atomicity
from .locality import (
    LocalityRelation,
    enumerate_strongly_separating,
    greatest_of_polar,
    is_strongly_separating,
    passes_chain,
)
from .order import bits, canonical_form
from .search import antitone_involutions, involutions


@dataclass(frozen=True)
class Orthocomplementation:
    """A validated orthocomplementation; build it with :func:`validate_orthocomplementation`."""

    host: Lattice = field(repr=False)
    psi: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.psi[a]


def validate_orthocomplementation(l: Lattice, psi) -> Orthocomplementation:
    psi = tuple(int(x) for x in psi)
    if len(psi) != l.n or any(not 0 <= x < l.n for x in psi):
        raise ValueError("psi must map every element into the lattice")
    for a in range(l.n):
        for b in bits(l.down[a]):
            if not l.le(psi[a], psi[b]):
                raise NotAntitone(f"{b} <= {a} but psi({a}) !<= psi({b})", witness=(b, a))
    for a in range(l.n):
        if psi[psi[a]] != a:
            raise NotInvolutive(f"psi(psi({a})) = {psi[psi[a]]}", witness=(a,))
    for a in range(l.n):
        common = l.down[a] & l.down[psi[a]] & ~(1 << l.bottom)
        if common:
            raise NotSeparating(f"{next(bits(common))} lies below {a} and psi({a})", witness=(a, next(bits(common))))
    assert psi[l.bottom] == l.top, "an orthocomplementation sends 0 to the top"
    return Orthocomplementation(l, psi)


def is_orthocomplementation(l: Lattice, psi) -> bool:
    try:
        validate_orthocomplementation(l, psi)
    except (NotAntitone, NotInvolutive, NotSeparating):
        return False
    return True


def check_de_morgan(o: Orthocomplementation) -> bool:
    l, psi = o.host, o.psi
    return all(
        psi[l.meet[a][b]] == l.join[psi[a]][psi[b]] and psi[l.join[a][b]] == l.meet[psi[a]][psi[b]]
        for a in range(l.n)
        for b in range(l.n)
    )


def check_strong_separation(o: Orthocomplementation) -> bool:
    """``a ⊕ Ψ(a) = 1`` for every ``a``."""
    l = o.host
    return all(l.oplus(a, o.psi[a]) == l.top for a in range(l.n))


def F_from_locality(r: LocalityRelation) -> Orthocomplementation:
    """``Ψ(a) = grt(a^⊤)``."""
    try:
        ok = is_strongly_separating(r)
    except PreconditionFailed as exc:
        raise PreconditionFailed(f"not strongly separating: {exc}", witness=exc.witness) from exc
    if not ok.holds:
        raise PreconditionFailed("not strongly separating", witness=ok.witness)
    return validate_orthocomplementation(r.host, [greatest_of_polar(r, a) for a in range(r.n)])


def G_from_ortho(o: Orthocomplementation) -> LocalityRelation:
    """``a ⊤ b`` iff ``b <= Ψ(a)``."""
    l = o.host
    r = LocalityRelation(l, tuple(l.down[o.psi[a]] for a in range(l.n)))
    assert passes_chain(r), "G(psi) is not strongly separating"
    return r


def enumerate_orthocomplementations(l: Lattice) -> list[Orthocomplementation]:
    """All orthocomplementations, via order-reversing involutions with ``a ∧ Ψ(a) = 0``."""
    _caps.require(l.n, _caps.ORTHO_CAP, "orthocomplementation search")
    return [validate_orthocomplementation(l, psi) for psi in antitone_involutions(l, separating=True)]


def brute_force_orthocomplementations(l: Lattice) -> list[Orthocomplementation]:
    """Unpruned oracle.

    Up to ten elements every involution is validated. Larger atomistic
    lattices are scanned through all bijections from atoms to coatoms, each
    extended by ``Ψ(x) = ⋀ Ψ(p)`` over the atoms ``p <= x``.
    """
    found = []
    if l.n <= _caps.BRUTE_INVOLUTION_CAP:
        candidates = involutions(l.n)
    elif atomicity(l).atomistic:
        atoms = list(bits(l.atom_mask))
        coatoms = [x for x in range(l.n) if x != l.top and l.up[x] == (1 << x) | (1 << l.top)]
        _caps.require(len(atoms), 9, "atom-coatom bijection scan")
        if len(atoms) != len(coatoms):
            return []

        def extended(image):
            at = dict(zip(atoms, image))
            return [l.meet_all(sum(1 << at[p] for p in bits(l.down[x] & l.atom_mask))) for x in range(l.n)]

        candidates = (extended(image) for image in permutations(coatoms))
    else:
        raise PreconditionFailed("brute force needs n <= 10 or an atomistic lattice")
    for psi in candidates:
        try:
            found.append(validate_orthocomplementation(l, psi))
        except (NotAntitone, NotInvolutive, NotSeparating):
            pass
    return sorted(found, key=lambda o: o.psi)


@dataclass
class RoundTripReport:
    lattice: str
    num_strongly_separating: int
    num_orthocomplementations: int
    roundtrip_ok: bool
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice,
            "num_strongly_separating": self.num_strongly_separating,
            "num_orthocomplementations": self.num_orthocomplementations,
            "roundtrip_ok": self.roundtrip_ok,
        }


def lattice_key(l: Lattice) -> str:
    try:
        return canonical_form(l.poset).hex()
    except OrtholocError:
        return ""


def roundtrip_check(l: Lattice) -> RoundTripReport:
    """Enumerate both sides independently and check ``G∘F`` and ``F∘G`` are identities."""
    _caps.require(l.n, _caps.ORTHO_CAP, "roundtrip_check")
    localities = enumerate_strongly_separating(l)
    orthos = enumerate_orthocomplementations(l)
    failures = []
    for r in localities:
        back = G_from_ortho(F_from_locality(r))
        if back.rows != r.rows:
            failures.append(("G(F(r)) != r", r.rows))
    for o in orthos:
        back = F_from_locality(G_from_ortho(o))
        if back.psi != o.psi:
            failures.append(("F(G(psi)) != psi", o.psi))
    if {F_from_locality(r).psi for r in localities} != {o.psi for o in orthos}:
        failures.append(("F(R) != O", None))
    ok = not failures and len(localities) == len(orthos)
    return RoundTripReport(lattice_key(l), len(localities), len(orthos), ok, failures)
