"""Small lattices, one per isomorphism class.

An ``n``-element lattice is a poset on ``n - 2`` inner elements with a bottom
and a top adjoined. Inner posets are grown one maximal element at a time and
deduplicated by canonical form; the bounded closures that pass
:func:`build_lattice` are the lattices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from . import _caps
from .errors import NotALattice
from .lattice import Lattice, build_lattice
from .order import Poset, canonical_form, is_down_closed


def _down_sets(p: Poset) -> Iterator[int]:
    for mask in range(1 << p.n):
        if is_down_closed(p, mask):
            yield mask


@lru_cache(maxsize=None)
def posets_up_to_iso(k: int) -> tuple[Poset, ...]:
    """All ``k``-element posets up to isomorphism (``k = 0`` gives one empty poset)."""
    if k == 0:
        return (Poset(0, ()),)
    seen: dict[bytes, Poset] = {}
    for smaller in posets_up_to_iso(k - 1):
        for below in _down_sets(smaller):
            up = [m | (1 << (k - 1)) if below >> i & 1 else m for i, m in enumerate(smaller.up)]
            up.append(1 << (k - 1))
            candidate = Poset.from_up_masks(up)
            seen.setdefault(canonical_form(candidate), candidate)
    return tuple(seen[key] for key in sorted(seen))


def bounded_closure(inner: Poset) -> Poset:
    """Adjoin a new bottom (index 0) and top (index ``k + 1``) to ``inner``."""
    k = inner.n
    top = k + 1
    up = [(1 << (k + 2)) - 1]
    for i in range(k):
        up.append((inner.up[i] << 1) | (1 << top))
    up.append(1 << top)
    return Poset.from_up_masks(up)


def enumerate_lattices(n: int) -> Iterator[Lattice]:
    """Yield one lattice per isomorphism class of ``n``-element lattices, sorted by canonical form."""
    if n < 1:
        raise ValueError("lattices have at least one element")
    _caps.require(n, _caps.enumeration_cap(), "enumerate_lattices")
    if n == 1:
        yield build_lattice(Poset(1, ((True,),)))
        return
    found: dict[bytes, Lattice] = {}
    for inner in posets_up_to_iso(n - 2):
        p = bounded_closure(inner)
        try:
            l = build_lattice(p)
        except NotALattice:
            continue
        found.setdefault(canonical_form(p), l)
    for key in sorted(found):
        yield found[key]


def lattice_corpus(max_n: int) -> list[Lattice]:
    out: list[Lattice] = []
    for n in range(1, max_n + 1):
        out.extend(enumerate_lattices(n))
    return out
