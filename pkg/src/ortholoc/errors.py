"""Exception hierarchy.

Every error that reports a failed axiom carries a ``witness`` attribute holding
the lexicographically first counterexample (element indices).
"""

from __future__ import annotations


class OrtholocError(Exception):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(OrtholocError):
    pass


class SizeCapExceeded(OrtholocError):
    pass


class IndexOutOfRange(OrtholocError):
    pass


# order axioms
class ReflexivityViolation(OrtholocError):
    pass


class AntisymmetryViolation(OrtholocError):
    pass


class TransitivityViolation(OrtholocError):
    pass


class NotComparable(OrtholocError):
    pass


class NoBottom(OrtholocError):
    pass


class NotALattice(OrtholocError):
    """``witness`` is ``((a, b), "MissingMeet" | "MissingJoin")``."""


# locality
class PreconditionFailed(OrtholocError):
    pass


class NoGreatestElement(OrtholocError):
    pass


class HostMismatch(OrtholocError):
    pass


# orthocomplementations
class NotAntitone(OrtholocError):
    pass


class NotInvolutive(OrtholocError):
    pass


class NotSeparating(OrtholocError):
    pass


class NotAtomistic(OrtholocError):
    pass


class ConditionThreeFailed(OrtholocError):
    pass


# linear algebra
class NotPrime(OrtholocError):
    pass


class DimensionMismatch(OrtholocError):
    pass


class NotABasis(OrtholocError):
    pass
