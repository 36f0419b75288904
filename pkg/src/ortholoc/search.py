"""Candidate self-maps for orthocomplementation and locality searches."""

from __future__ import annotations

from typing import Iterator

from .lattice import Lattice
from .order import Poset


def involutions(n: int) -> Iterator[tuple[int, ...]]:
    """Every involution of ``range(n)``, in lexicographic order."""
    psi = [-1] * n

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        while i < n and psi[i] != -1:
            i += 1
        if i == n:
            yield tuple(psi)
            return
        for j in range(i, n):
            if psi[j] != -1:
                continue
            psi[i], psi[j] = j, i
            yield from extend(i + 1)
            psi[i] = psi[j] = -1

    yield from extend(0)


def _dual_signature(p: Poset, a: int) -> tuple:
    return (bin(p.up[a]).count("1"), bin(p.down[a]).count("1"), p.depths[a], p.heights[a])


def _signature(p: Poset, a: int) -> tuple:
    return (bin(p.down[a]).count("1"), bin(p.up[a]).count("1"), p.heights[a], p.depths[a])


def antitone_involutions(l: Lattice, separating: bool = False) -> Iterator[tuple[int, ...]]:
    """Involutions that reverse the order, found by backtracking.

    An antitone involution is an order anti-automorphism, so ``a`` may only be
    sent to elements whose rank data is dual to its own. With ``separating``
    the search also demands ``a ∧ Ψ(a) = 0``.
    """
    p = l.poset
    n = p.n
    sig = [_signature(p, a) for a in range(n)]
    dual = [_dual_signature(p, a) for a in range(n)]
    options = [[b for b in range(n) if sig[b] == dual[a]] for a in range(n)]
    psi = [-1] * n
    leq = p.leq

    def consistent(a: int) -> bool:
        pa = psi[a]
        for x in range(n):
            px = psi[x]
            if px == -1:
                continue
            if leq[x][a] and not leq[pa][px]:
                return False
            if leq[a][x] and not leq[px][pa]:
                return False
        return True

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        while i < n and psi[i] != -1:
            i += 1
        if i == n:
            yield tuple(psi)
            return
        for b in options[i]:
            if psi[b] != -1:
                continue
            if separating and l.meet[i][b] != l.bottom:
                continue
            psi[i], psi[b] = b, i
            if consistent(i) and consistent(b):
                yield from extend(i + 1)
            psi[i] = psi[b] = -1

    yield from extend(0)
