"""Finite lattices, locality relations and orthocomplementations."""

from .errors import *  # noqa: F401,F403
from .lattice import (
    Lattice,
    SublatticeKind,
    atomicity,
    build_lattice,
    cancellation_laws,
    complementedness,
    complements_of,
    find_forbidden_sublattice,
    is_distributive,
    is_modular,
    lattice_from_covers,
)
from .locality import (
    LocalityRelation,
    check_join_polar,
    classify,
    closedness_status,
    enumerate_strongly_separating,
    greatest_of_polar,
    intersect,
    is_lattice_locality,
    is_nondegenerate,
    is_poset_locality,
    is_separating,
    is_strongly_separating,
    kernel,
    meet_disjointness,
    polar,
)
from .order import ElementSet, Poset, atoms, bounds, canonical_form, covers, down_set, interval, is_poset_ideal, validate_poset
from .enumeration import enumerate_lattices
from .ortho import (
    F_from_locality,
    G_from_ortho,
    Orthocomplementation,
    enumerate_orthocomplementations,
    roundtrip_check,
    validate_orthocomplementation,
)

__version__ = "0.1.0"
