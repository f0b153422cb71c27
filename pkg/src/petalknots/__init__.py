"""Legendrian invariants of petal projections, with independent oracles."""

__version__ = "0.1.0"

from .errors import PetalError  # noqa: E402
from .petal_core import (  # noqa: E402
    LagrangianPetalDiagram,
    PetalPermutation,
    canonical_twists,
    lambda_family,
    rotation_number,
    sigma_sum,
    thurston_bennequin,
    validate_permutation,
)

__all__ = [
    "PetalError",
    "PetalPermutation",
    "LagrangianPetalDiagram",
    "validate_permutation",
    "canonical_twists",
    "sigma_sum",
    "thurston_bennequin",
    "rotation_number",
    "lambda_family",
]
