"""Continuous extension of the DCT-I (CEDCT).

The package implements the DCT-I transform pair in its class-weighted form,
its continuous extension between grid knots, the standard DFT baseline used
for contrast, tensor-product transforms on rectangular grids, and a block
image pipeline built on top of them.
"""

from cedct.errors import DomainError, PgmError
from cedct.spectral import (
    CoefficientVector,
    GridFunction1D,
    TransformMatrix,
    class_weight,
    dct_matrix,
    derivative_at_knot,
    derivative_series,
    discrete_form,
    evaluate,
    evaluate_kernel,
    forward,
    inverse_on_grid,
    psi_matrix,
)

__all__ = [
    "CoefficientVector",
    "DomainError",
    "GridFunction1D",
    "PgmError",
    "TransformMatrix",
    "class_weight",
    "dct_matrix",
    "derivative_at_knot",
    "derivative_series",
    "discrete_form",
    "evaluate",
    "evaluate_kernel",
    "forward",
    "inverse_on_grid",
    "psi_matrix",
]

__version__ = "0.1.0"
