"""Phase-space localization: entropy of 1D states, Dirac-comb calculus, and
entropy minimisation inside Fourier symmetry subspaces."""

__version__ = "0.1.0"

from .subspace import SubspaceSpec  # noqa: E402
from .errors import (  # noqa: E402
    EmptyStart,
    InvalidExponent,
    NotEigenvector,
    NotInClass,
    NotNormalized,
    PhaselocError,
    RangeError,
)

__all__ = [
    "__version__",
    "SubspaceSpec",
    "PhaselocError",
    "NotNormalized",
    "InvalidExponent",
    "NotInClass",
    "RangeError",
    "EmptyStart",
    "NotEigenvector",
]
