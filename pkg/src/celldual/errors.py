"""Exceptions raised by celldual."""

from collections.abc import Sequence


class CellDualError(Exception):
    """Base class for every error raised by the library."""


class InvalidInputError(CellDualError):
    """The user's data is malformed or violates a precondition."""

    def __init__(self, message: str, witness: Sequence[object] = ()) -> None:
        """Initialize with a message and the offending cells or degrees."""
        super().__init__(message)
        self.witness = tuple(witness)


class RegularityError(InvalidInputError):
    """A poset failed one of the regular cell complex checks."""

    def __init__(self, kind: str, message: str, cells: Sequence[str] = ()) -> None:
        """Initialize with the failed check's kind and the offending cells."""
        super().__init__(message, cells)
        self.kind = kind
        self.cells = tuple(cells)


class NotSemilatticeError(InvalidInputError):
    """The projective route of uExt was requested on a non-semilattice."""


class ComplexError(CellDualError):
    """Consecutive differentials do not compose to zero."""

    def __init__(self, message: str, degree: int) -> None:
        """Initialize with the degree where d^{i+1} d^i fails to vanish."""
        super().__init__(message)
        self.degree = degree


class AmbiguousJoinError(CellDualError):
    """Two elements have several minimal upper bounds."""


class InvariantViolation(CellDualError):
    """Two independent computations of the same quantity disagreed."""
