"""Exception hierarchy shared by all gwa modules."""

from __future__ import annotations


class GwaError(Exception):
    """Base class for every error raised by this package."""


class GroupValidationError(GwaError):
    """A candidate Cayley table failed one of the group axioms."""


class NotClosed(GroupValidationError):
    pass


class NoIdentityAtZero(GroupValidationError):
    pass


class NotAssociative(GroupValidationError):
    pass


class MissingInverse(GroupValidationError):
    pass


class TwistNotHomomorphism(GwaError):
    pass


class TwistNotAutomorphism(GwaError):
    pass


class UnknownId(GwaError):
    pass


class UnsupportedHeavy(GwaError):
    """Catalog entry is gated because its enumeration is out of desk scale."""


class NotNormalSubgroup(GwaError):
    pass


class DimensionMismatch(GwaError):
    pass


class NotIntoAut(GwaError):
    pass


class IndexOutOfRange(GwaError):
    pass


class SeedOutsideAmbient(GwaError):
    pass


class NotAnIdeal(GwaError):
    pass


class InducedActionIllDefined(GwaError):
    """Quotient action depends on coset representatives; impossible for true ideals."""


class LengthMismatch(GwaError):
    pass


class MixedUnderlyingGroups(GwaError):
    pass


class InvariantViolation(GwaError):
    """A cross-cutting invariant failed; the CLI maps this to exit code 3."""
