"""Duality computations for regular cell complexes and their incidence algebras."""

from celldual.cellcomplex import CellComplex, Region, cellular_homology, load_complex
from celldual.errors import (
    CellDualError,
    InvalidInputError,
    InvariantViolation,
    NotSemilatticeError,
    RegularityError,
)
from celldual.linalg import RATIONALS, FieldSpec

__version__ = "0.1.0"

__all__ = [
    "RATIONALS",
    "CellComplex",
    "CellDualError",
    "FieldSpec",
    "InvalidInputError",
    "InvariantViolation",
    "NotSemilatticeError",
    "Region",
    "RegularityError",
    "cellular_homology",
    "load_complex",
]
