"""Exception types shared across the package."""


class CporderError(Exception):
    """Base class for all package-specific errors."""


class TieError(CporderError):
    """Two distinct subsets have equal utility, so no linear order exists."""

    def __init__(self, first, second, utility):
        self.first = first
        self.second = second
        self.utility = utility
        super().__init__(
            f"utility tie: subsets {first} and {second} both have utility {utility}"
        )


class DuplicateError(CporderError):
    """Inserted utility equals an existing entry."""


class NotSortedError(CporderError):
    """Utility vector expected to be strictly increasing but is not."""


class ConeAxiomError(CporderError):
    """A claimed discrete cone violates one of the axioms D1, D2, D3."""


class EmptySideError(CporderError):
    """Flip requested over a pair whose smaller side is the empty set."""


class NotRepresentableError(CporderError):
    """Operation requires a representable order but the order is not."""


class LengthMismatchError(CporderError):
    """Trading transform has differing numbers of left and right sets."""


class NotNeighborsError(CporderError):
    """Two orders are not related by a single flip."""


class VerificationError(CporderError):
    """A construction failed a verification assertion; message names it."""


class RangeError(CporderError):
    """Numeric argument outside its admissible open interval."""


class ResourceError(CporderError):
    """Time or memory budget exhausted; carries partial progress."""

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)
