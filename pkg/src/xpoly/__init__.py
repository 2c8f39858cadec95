"""Exceptional X_l Laguerre and Jacobi polynomials and the behavior of their zeros."""

__version__ = "0.1.0"

from .errors import (
    BranchCut,
    CountMismatch,
    DegenerateDegree,
    DegreeZero,
    NonConvergence,
    ParameterViolation,
    XPolyError,
)
from .families import Family, FamilySpec, classical_part, deforming_poly, exceptional_poly
from .roots import ClassifiedZeros, RootConfig, RootSet, exceptional_zeros, find_roots
from .verify import VerificationReport

__all__ = [
    "BranchCut",
    "ClassifiedZeros",
    "CountMismatch",
    "DegenerateDegree",
    "DegreeZero",
    "Family",
    "FamilySpec",
    "NonConvergence",
    "ParameterViolation",
    "RootConfig",
    "RootSet",
    "VerificationReport",
    "XPolyError",
    "classical_part",
    "deforming_poly",
    "exceptional_poly",
    "exceptional_zeros",
    "find_roots",
]
