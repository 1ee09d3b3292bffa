"""Standard DFT baseline and continuous Fourier coefficients.

These are the comparison objects for the cosine transform: the DFT pair on
the first ``N`` knots, its naive continuous extension ``h_N(t)``, the
half-spectrum series ``s_K(t)`` and the truncated continuous Fourier series
``P_K(t)`` whose coefficients come from quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from cedct.constants import DEFAULT_QUADRATURE_POINTS
from cedct.errors import DomainError
from cedct.spectral import GridFunction1D, _frozen_array, _normalized, _unwrap

__all__ = [
    "CftCoefficients",
    "DftCoefficients",
    "cedft_evaluate",
    "cft_coefficients",
    "cft_evaluate",
    "dft_forward",
    "dft_inverse_on_grid",
    "truncated_series",
    "truncated_series_derivative",
]


@dataclass(frozen=True)
class DftCoefficients:
    """DFT coefficients ``u_0 .. u_{N-1}`` of samples on ``[0, T0]``."""

    coefficients: np.ndarray
    interval_length: float = 1.0

    def __post_init__(self):
        u = np.array(_frozen_array(self.coefficients, "coefficients"), dtype=complex)
        u.flags.writeable = False
        if u.ndim != 1 or u.size < 1:
            raise DomainError("DFT coefficients must be a non-empty vector")
        if not self.interval_length > 0:
            raise DomainError("interval_length must be positive")
        object.__setattr__(self, "coefficients", u)
        object.__setattr__(self, "interval_length", float(self.interval_length))

    @property
    def n(self) -> int:
        return self.coefficients.size


@dataclass(frozen=True)
class CftCoefficients:
    """Continuous Fourier coefficients ``c_0 .. c_K`` of a function on ``[0, T0]``.

    For real functions the negative harmonics follow from
    ``c_{-j} = conj(c_j)`` and are not stored (``real_input=True``).
    """

    coefficients: np.ndarray
    interval_length: float = 1.0
    real_input: bool = True

    @property
    def harmonic_order(self) -> int:
        return self.coefficients.size - 1


def _dft_matrix(n: int, sign: int) -> np.ndarray:
    k = np.arange(n)
    # Reduce jk mod N so the phase stays accurate for larger N.
    return np.exp(sign * 2j * np.pi * (np.outer(k, k) % n) / n)


def dft_forward(g: GridFunction1D) -> DftCoefficients:
    """``u_j = (1/N) sum_{k<N} g_k exp(-2 pi i k j / N)``.

    Only ``g_0 .. g_{N-1}`` are used; the last sample ``g_N`` belongs to the
    period boundary and is discarded.
    """
    n = g.n_intervals
    return DftCoefficients(_dft_matrix(n, -1) @ g.samples[:n] / n, g.interval_length)


def dft_inverse_on_grid(u: DftCoefficients) -> GridFunction1D:
    """``g_k = sum_j u_j exp(2 pi i k j / N)``.

    The result is closed periodically, ``g_N = g_0``, so it is a grid function
    on the same ``N``-interval grid as the input of :func:`dft_forward`; the
    recovered samples are the first ``N`` entries.
    """
    g = _dft_matrix(u.n, 1) @ u.coefficients
    return GridFunction1D(np.append(g, g[0]), u.interval_length)


def cedft_evaluate(u: DftCoefficients, t):
    """Naive continuous extension ``h_N(t) = sum_{j<N} u_j exp(2 pi i j t / T0)``.

    Complex valued even for real data; take ``.real`` for plotting.
    """
    x = _normalized(t, u.interval_length)
    j = np.arange(u.n)
    values = np.exp(2j * np.pi * np.multiply.outer(x, j)) @ u.coefficients
    return _unwrap(values, t)


def _half_spectrum(u: DftCoefficients, order: int) -> None:
    if not 1 <= order <= u.n // 2:
        raise DomainError(f"K must lie in [1, {u.n // 2}], got {order}")


def truncated_series(u: DftCoefficients, order: int, t):
    """Half-spectrum series ``s_K(t) = u_0 + 2 Re sum_{j=1}^K u_j exp(2 pi i j t / T0)``."""
    _half_spectrum(u, order)
    x = np.asarray(t, dtype=float) / u.interval_length
    j = np.arange(1, order + 1)
    waves = np.exp(2j * np.pi * np.multiply.outer(x, j))
    values = u.coefficients[0].real + 2.0 * (waves @ u.coefficients[1 : order + 1]).real
    return _unwrap(values, t)


def truncated_series_derivative(u: DftCoefficients, order: int, t):
    """Derivative ``s_K'(t)`` of :func:`truncated_series`."""
    _half_spectrum(u, order)
    x = np.asarray(t, dtype=float) / u.interval_length
    j = np.arange(1, order + 1)
    rates = 2j * np.pi * j / u.interval_length
    waves = np.exp(2j * np.pi * np.multiply.outer(x, j))
    values = 2.0 * (waves @ (rates * u.coefficients[1 : order + 1])).real
    return _unwrap(values, t)


def cft_coefficients(
    func: Callable,
    order: int,
    quadrature_points: int = DEFAULT_QUADRATURE_POINTS,
    interval_length: float = 1.0,
) -> CftCoefficients:
    """Continuous Fourier coefficients ``c_0 .. c_K`` by composite Simpson quadrature.

    ``c_j = (1/T0) int_0^T0 g(t) exp(-2 pi i j t / T0) dt``.  ``quadrature_points``
    is the number of Simpson subintervals; it must be at least ``8 K`` and is
    rounded up to an even count.
    """
    if order < 0:
        raise DomainError("harmonic order K must be >= 0")
    if quadrature_points < max(8 * order, 2):
        raise DomainError(
            f"need at least {max(8 * order, 2)} quadrature points for K={order}, "
            f"got {quadrature_points}"
        )
    intervals = quadrature_points + quadrature_points % 2
    x = np.linspace(0.0, 1.0, intervals + 1)
    values = np.asarray(func(x * interval_length))
    j = np.arange(order + 1)
    integrand = values * np.exp(-2j * np.pi * np.multiply.outer(j, x))
    c = simpson(integrand, x=x, axis=-1)
    real_input = bool(np.isrealobj(values))
    c = np.asarray(c, dtype=complex)
    c.flags.writeable = False
    return CftCoefficients(c, float(interval_length), real_input)


def cft_evaluate(c: CftCoefficients, t):
    """Truncated Fourier series ``P_K(t) = c_0 + 2 Re sum_{j=1}^K c_j exp(2 pi i j t / T0)``.

    Only meaningful for real input functions, where the negative harmonics are
    the conjugates of the stored ones.
    """
    if not c.real_input:
        raise DomainError("P_K via conjugate symmetry requires a real input function")
    x = np.asarray(t, dtype=float) / c.interval_length
    j = np.arange(1, c.harmonic_order + 1)
    waves = np.exp(2j * np.pi * np.multiply.outer(x, j))
    values = c.coefficients[0].real + 2.0 * (waves @ c.coefficients[1:]).real
    return _unwrap(values, t)
