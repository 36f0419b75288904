"""Size caps. ``ORTHOLOC_CAP`` overrides the lattice enumeration cap, clamped to the hard cap."""

from __future__ import annotations

import os

from .errors import SizeCapExceeded

ENUMERATION_CAP = 8
ENUMERATION_HARD_CAP = 10
# canonical forms use refinement, so they reach further than enumeration
CANONICAL_CAP = 64
# exhaustive scan of all symmetric relations
BLIND_RELATION_CAP = 5
# pruned Psi searches
ORTHO_CAP = 64
# unpruned involution scan
BRUTE_INVOLUTION_CAP = 10
# q**n for vector spaces
VECTOR_CAP = 2 ** 16
SUBSPACE_COUNT_CAP = 4096
PLANE_Q_CAP = 11


def enumeration_cap() -> int:
    raw = os.environ.get("ORTHOLOC_CAP")
    if raw is None:
        return ENUMERATION_CAP
    try:
        value = int(raw)
    except ValueError:
        return ENUMERATION_CAP
    return max(1, min(value, ENUMERATION_HARD_CAP))


def require(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise SizeCapExceeded(f"{what}: size {size} exceeds cap {cap}", witness=size)
