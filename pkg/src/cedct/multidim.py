"""Tensor-product DCT-I on rectangular n-dimensional grids.

The n-dimensional transform factors into one-dimensional passes, one per
axis, so the forward transform is ``n`` matrix products with the ``D_M``
matrices and evaluation contracts one cosine vector (or matrix, for a whole
lattice) per axis.  Arrays are row-major with axis 0 slowest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from cedct.constants import ENDPOINT_SLACK
from cedct.errors import DomainError
from cedct.spectral import _dct_entries, _frozen_array, _psi_entries

__all__ = [
    "CoefficientTensorND",
    "GridFunctionND",
    "evaluate_nd",
    "evaluate_nd_grid",
    "forward_nd",
    "inverse_nd",
]


def _check_extents(extents, ndim: int) -> tuple[float, ...]:
    if extents is None:
        return (1.0,) * ndim
    extents = tuple(float(x) for x in extents)
    if len(extents) != ndim:
        raise DomainError(f"expected {ndim} extents, got {len(extents)}")
    if not all(np.isfinite(x) and x > 0 for x in extents):
        raise DomainError(f"extents must be positive, got {extents}")
    return extents


def _check_array(values, name: str) -> np.ndarray:
    arr = _frozen_array(values, name)
    if arr.ndim < 1:
        raise DomainError(f"{name} must have at least one axis")
    if any(n < 2 for n in arr.shape):
        raise DomainError(f"every axis needs at least two knots, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class GridFunctionND:
    """Samples on a rectangular grid with ``M_i`` intervals along axis ``i``."""

    samples: np.ndarray
    extents: tuple[float, ...] | None = None

    def __post_init__(self):
        samples = _check_array(self.samples, "samples")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "extents", _check_extents(self.extents, samples.ndim))

    @classmethod
    def from_function(cls, func, shape: Sequence[int], extents=None) -> "GridFunctionND":
        """Sample ``func(x_1, ..., x_n)`` on the ``shape``-interval grid."""
        extents = _check_extents(extents, len(shape))
        axes = [np.arange(m + 1) / m * x for m, x in zip(shape, extents)]
        return cls(np.asarray(func(*np.meshgrid(*axes, indexing="ij"))), extents)

    @property
    def shape(self) -> tuple[int, ...]:
        """Interval counts ``(M_1, ..., M_n)``."""
        return tuple(n - 1 for n in self.samples.shape)

    @property
    def ndim(self) -> int:
        return self.samples.ndim


@dataclass(frozen=True)
class CoefficientTensorND:
    """Coefficients ``A_{m_1 .. m_n}`` of a tensor-product cosine series."""

    coefficients: np.ndarray
    extents: tuple[float, ...] | None = None

    def __post_init__(self):
        coefficients = _check_array(self.coefficients, "coefficients")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "extents", _check_extents(self.extents, coefficients.ndim))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n - 1 for n in self.coefficients.shape)

    @property
    def ndim(self) -> int:
        return self.coefficients.ndim


def _apply_along_axes(values: np.ndarray, matrices: Sequence[np.ndarray]) -> np.ndarray:
    # Contract matrix i with axis i, one axis at a time in a fixed order.
    out = values
    for axis, matrix in enumerate(matrices):
        out = np.moveaxis(np.tensordot(matrix, out, axes=([1], [axis])), 0, axis)
    return out


def forward_nd(grid: GridFunctionND) -> CoefficientTensorND:
    """Tensor-product forward transform, one ``D_M`` pass per axis."""
    matrices = [_dct_entries(m) for m in grid.shape]
    return CoefficientTensorND(_apply_along_axes(grid.samples, matrices), grid.extents)


def inverse_nd(coeffs: CoefficientTensorND) -> GridFunctionND:
    """Tensor-product inverse transform back onto the knots."""
    matrices = [_psi_entries(m) for m in coeffs.shape]
    return GridFunctionND(_apply_along_axes(coeffs.coefficients, matrices), coeffs.extents)


def evaluate_nd(coeffs: CoefficientTensorND, point: Sequence[float]) -> float:
    """Value of ``F(x_1, .., x_n) = sum A_m prod_i cos(pi m_i x_i / X_i)`` at one point."""
    point = tuple(float(p) for p in point)
    if len(point) != coeffs.ndim:
        raise DomainError(f"expected a {coeffs.ndim}-dimensional point, got {len(point)} coordinates")
    rows = []
    for x, extent, m in zip(point, coeffs.extents, coeffs.shape):
        u = x / extent
        if not -ENDPOINT_SLACK <= u <= 1 + ENDPOINT_SLACK:
            raise DomainError(f"coordinate {x} outside [0, {extent}]")
        rows.append(np.cos(np.pi * np.arange(m + 1) * min(max(u, 0.0), 1.0))[None, :])
    return _apply_along_axes(coeffs.coefficients, rows).item()


def _lattice_cosines(m: int, refinement: int) -> np.ndarray:
    # cos(pi j i / (m r)) with the phase reduced mod 2 m r.
    steps = m * refinement
    i = np.arange(steps + 1)
    j = np.arange(m + 1)
    return np.cos(np.pi * (np.outer(i, j) % (2 * steps)) / steps)


def evaluate_nd_grid(coeffs: CoefficientTensorND, refinement: int | Sequence[int]) -> GridFunctionND:
    """Evaluate on the lattice where each axis interval is split ``refinement``-fold.

    Axis ``i`` gets ``refinement_i * M_i + 1`` points.
    """
    if np.ndim(refinement) == 0:
        refinement = (int(refinement),) * coeffs.ndim
    refinement = tuple(int(r) for r in refinement)
    if len(refinement) != coeffs.ndim or any(r < 1 for r in refinement):
        raise DomainError(f"refinement must be >= 1 per axis, got {refinement}")
    matrices = [_lattice_cosines(m, r) for m, r in zip(coeffs.shape, refinement)]
    return GridFunctionND(_apply_along_axes(coeffs.coefficients, matrices), coeffs.extents)
