"""One-dimensional DCT-I transform pair and its continuous extension.

Samples ``g_0 .. g_N`` live on the equidistant knots ``t_k = k*T0/N`` of
``[0, T0]``.  The forward transform

    a_j = sum_k (C_j C_k / 2N) g_k cos(pi j k / N)

is inverted exactly on the knots by ``g_k = sum_j a_j cos(pi j k / N)``, and
the same cosine series evaluated at arbitrary ``t`` gives a trigonometric
interpolant ``f_N(t)`` that converges to a continuous originating function.
``C_k`` is 1 at the two end knots and 2 elsewhere.

Everything is computed in the normalized variable ``x = t / T0``; derivative
values pick up a factor ``1 / T0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from cedct.constants import ENDPOINT_SLACK, KERNEL_GUARD
from cedct.errors import DomainError

__all__ = [
    "CoefficientVector",
    "GridFunction1D",
    "TransformMatrix",
    "basis_function",
    "class_weight",
    "class_weights",
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


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values)
    if arr.dtype.kind in "biu":
        arr = arr.astype(float)
    elif arr.dtype.kind == "c":
        if not np.any(arr.imag):
            arr = arr.real.astype(float)
    elif arr.dtype.kind != "f":
        raise TypeError(f"{name} must be numeric, got dtype {arr.dtype}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contain non-finite values")
    arr.flags.writeable = False
    return arr


def _check_length(interval_length: float) -> float:
    length = float(interval_length)
    if not (np.isfinite(length) and length > 0):
        raise DomainError(f"interval_length must be positive, got {interval_length!r}")
    return length


@dataclass(frozen=True)
class GridFunction1D:
    """Samples ``g_0 .. g_N`` on the knots ``k * interval_length / N``."""

    samples: np.ndarray
    interval_length: float = 1.0

    def __post_init__(self):
        samples = _frozen_array(self.samples, "samples")
        if samples.ndim != 1 or samples.size < 2:
            raise DomainError("a grid function needs at least two samples (N >= 1)")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "interval_length", _check_length(self.interval_length))

    @classmethod
    def from_function(
        cls, func: Callable, n_intervals: int, interval_length: float = 1.0
    ) -> "GridFunction1D":
        """Sample ``func`` on the ``n_intervals``-interval grid."""
        if n_intervals < 1:
            raise DomainError("n_intervals must be >= 1")
        t = np.arange(n_intervals + 1) / n_intervals * interval_length
        return cls(np.asarray(func(t)), interval_length)

    @property
    def n_intervals(self) -> int:
        return self.samples.size - 1

    @property
    def knots(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.n_intervals * self.interval_length

    def __add__(self, other: "GridFunction1D") -> "GridFunction1D":
        _check_compatible(self, other)
        return GridFunction1D(self.samples + other.samples, self.interval_length)

    def __mul__(self, scalar: float) -> "GridFunction1D":
        return GridFunction1D(self.samples * scalar, self.interval_length)

    __rmul__ = __mul__


@dataclass(frozen=True)
class CoefficientVector:
    """DCT-I coefficients ``a_0 .. a_N`` of a grid function on ``[0, T0]``."""

    coefficients: np.ndarray
    interval_length: float = 1.0

    def __post_init__(self):
        coefficients = _frozen_array(self.coefficients, "coefficients")
        if coefficients.ndim != 1 or coefficients.size < 2:
            raise DomainError("a DCT-I coefficient vector needs N + 1 >= 2 entries")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "interval_length", _check_length(self.interval_length))

    @property
    def n_intervals(self) -> int:
        return self.coefficients.size - 1


@dataclass(frozen=True)
class TransformMatrix:
    """Dense ``(N+1) x (N+1)`` transform matrix.

    ``variant`` is ``"dct"`` for the forward matrix ``D_N`` and ``"psi"`` for
    the synthesis matrix ``Psi_N = [cos(pi j k / N)]``; the two are inverses.
    """

    entries: np.ndarray
    n_intervals: int
    variant: str = "dct"

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __matmul__(self, other):
        if isinstance(other, TransformMatrix):
            other = other.entries
        return self.entries @ other


def class_weight(n_intervals: int, k: int) -> int:
    """Size of the conjugacy class at knot ``k``: 1 at the ends, 2 inside."""
    if n_intervals < 1:
        raise DomainError(f"N must be >= 1, got {n_intervals}")
    if not 0 <= k <= n_intervals:
        raise DomainError(f"k must lie in [0, {n_intervals}], got {k}")
    return 1 if k in (0, n_intervals) else 2


@lru_cache(maxsize=64)
def _weights(n_intervals: int) -> np.ndarray:
    c = np.full(n_intervals + 1, 2.0)
    c[0] = c[-1] = 1.0
    c.flags.writeable = False
    return c


def class_weights(n_intervals: int) -> np.ndarray:
    """Vector ``(C_{N,0}, ..., C_{N,N})``."""
    if n_intervals < 1:
        raise DomainError(f"N must be >= 1, got {n_intervals}")
    return _weights(n_intervals)


@lru_cache(maxsize=64)
def _psi_entries(n_intervals: int) -> np.ndarray:
    j = np.arange(n_intervals + 1)
    # Reduce jk mod 2N first so large products keep full argument accuracy.
    phase = np.outer(j, j) % (2 * n_intervals)
    psi = np.cos(np.pi * phase / n_intervals)
    psi.flags.writeable = False
    return psi


@lru_cache(maxsize=64)
def _dct_entries(n_intervals: int) -> np.ndarray:
    c = _weights(n_intervals)
    d = np.outer(c, c) / (2 * n_intervals) * _psi_entries(n_intervals)
    d.flags.writeable = False
    return d


def dct_matrix(n_intervals: int) -> TransformMatrix:
    """Forward matrix ``D_N[j, k] = C_j C_k cos(pi j k / N) / 2N``."""
    if n_intervals < 1:
        raise DomainError(f"N must be >= 1, got {n_intervals}")
    return TransformMatrix(_dct_entries(n_intervals), n_intervals, "dct")


def psi_matrix(n_intervals: int) -> TransformMatrix:
    """Synthesis matrix ``Psi_N[j, k] = cos(pi j k / N)``."""
    if n_intervals < 1:
        raise DomainError(f"N must be >= 1, got {n_intervals}")
    return TransformMatrix(_psi_entries(n_intervals), n_intervals, "psi")


def basis_function(m: int, n_intervals: int, interval_length: float = 1.0) -> GridFunction1D:
    """Samples of ``psi_m(t) = cos(pi m t / T0)`` on the N-interval grid."""
    if m < 0:
        raise DomainError("basis index must be non-negative")
    k = np.arange(n_intervals + 1)
    return GridFunction1D(np.cos(np.pi * ((m * k) % (2 * n_intervals)) / n_intervals), interval_length)


def forward(g: GridFunction1D) -> CoefficientVector:
    """DCT-I coefficients of ``g``."""
    return CoefficientVector(_dct_entries(g.n_intervals) @ g.samples, g.interval_length)


def inverse_on_grid(a: CoefficientVector) -> GridFunction1D:
    """Samples ``g_k = sum_j a_j cos(pi j k / N)`` on the knots."""
    return GridFunction1D(_psi_entries(a.n_intervals) @ a.coefficients, a.interval_length)


def _normalized(t, interval_length: float, *, open_interval: bool = False) -> np.ndarray:
    x = np.asarray(t, dtype=float) / interval_length
    if open_interval:
        bad = ~((x > 0) & (x < 1))
    else:
        bad = ~((x >= -ENDPOINT_SLACK) & (x <= 1 + ENDPOINT_SLACK))
    if np.any(bad):
        where = "(0, T0)" if open_interval else "[0, T0]"
        raise DomainError(f"t must lie in {where} with T0={interval_length}; got {np.asarray(t)[bad]}")
    return x if open_interval else np.clip(x, 0.0, 1.0)


def _unwrap(values: np.ndarray, t):
    # Scalar in, Python scalar out.
    return np.asarray(values).item() if np.ndim(t) == 0 else values


def _cosine_series(coefficients: np.ndarray, x: np.ndarray) -> np.ndarray:
    j = np.arange(coefficients.size)
    return np.cos(np.pi * np.multiply.outer(x, j)) @ coefficients


def evaluate(a: CoefficientVector, t):
    """Continuous extension ``f_N(t) = sum_j a_j cos(pi j t / T0)``.

    ``t`` may be a scalar or an array; it must lie in ``[0, T0]``.
    """
    x = _normalized(t, a.interval_length)
    return _unwrap(_cosine_series(a.coefficients, x), t)


def _cos_difference(xk: np.ndarray, x: np.ndarray) -> np.ndarray:
    # cos(pi xk) - cos(pi x) in product form; no cancellation near xk == x.
    return 2.0 * np.sin(np.pi * np.add.outer(x, xk) / 2) * np.sin(np.pi * np.subtract.outer(x, xk) / 2)


def _knot_offset(x: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nearest knot index ``k`` and the offset ``N x - k``, free of rounding in ``N x``."""
    p = x * n
    # Dekker split of x; n is a small integer so it splits exactly.
    c = 134217729.0 * x
    hi = c - (c - x)
    lo = x - hi
    err = (hi * n - p) + lo * n
    k = np.rint(p)
    return k.astype(int), (p - k) + err


def evaluate_kernel(g: GridFunction1D, t):
    """Evaluate ``f_N(t)`` directly from the samples via the closed-form kernel.

    Uses ``f_N(t) = sum_k A_k(t) g_k`` with
    ``A_k(t) = (-1)^k C_k sin(pi N x) sin(pi x) / (2N (cos(pi x_k) - cos(pi x)))``.
    Points where some denominator falls below ``KERNEL_GUARD`` are routed to
    the cosine series instead, which takes the limiting value ``g_k`` at knots.
    """
    n = g.n_intervals
    x = np.atleast_1d(_normalized(t, g.interval_length)).ravel()
    xk = np.arange(n + 1) / n
    nearest, offset = _knot_offset(x, n)

    denom = _cos_difference(xk, x)
    # Close to a knot the plain difference x - x_k loses digits; rebuild that
    # entry from the exact offset.
    rows = np.arange(x.size)
    near_x = nearest / n
    denom[rows, nearest] = (
        2.0 * np.sin(np.pi * (x + near_x) / 2) * np.sin(np.pi * offset / (2 * n))
    )
    near = np.min(np.abs(denom), axis=1) < KERNEL_GUARD

    signs = np.where(np.arange(n + 1) % 2 == 0, 1.0, -1.0)
    weights = signs * _weights(n) / (2 * n)
    out = np.empty(x.shape, dtype=np.result_type(g.samples, float))
    far = ~near
    if np.any(far):
        # sin(pi N x) = (-1)^k sin(pi (N x - k)) for the nearest knot k.
        sin_nx = np.where(nearest % 2 == 0, 1.0, -1.0) * np.sin(np.pi * offset)
        numer = (sin_nx * np.sin(np.pi * x))[far]
        out[far] = numer * ((weights * g.samples) / denom[far]).sum(axis=1)
    if np.any(near):
        out[near] = _cosine_series(forward(g).coefficients, x[near])
    return _unwrap(out.reshape(np.shape(t)), t)


def derivative_at_knot(g: GridFunction1D, m: int) -> float:
    """Exact derivative ``f_N'(t_m)`` at an interior knot from the samples.

    Differentiating the kernel form at ``t_m`` leaves

        (pi/2) sin(pi x_m) sum_{k != m} (-1)^(k-m) C_k g_k / (cos pi x_k - cos pi x_m)
        + pi cos(pi x_m) / (2 sin(pi x_m)) g_m

    divided by ``T0``.
    """
    n = g.n_intervals
    if not 1 <= m <= n - 1:
        raise DomainError(f"derivative is defined at interior knots 1..{n - 1}, got m={m}")
    xm = m / n
    k = np.arange(n + 1)
    others = k != m
    xk = k[others] / n
    denom = _cos_difference(xk, np.array([xm]))[0]
    signs = np.where((k[others] - m) % 2 == 0, 1.0, -1.0)
    total = np.sum(signs * _weights(n)[others] * g.samples[others] / denom)
    s, c = np.sin(np.pi * xm), np.cos(np.pi * xm)
    value = 0.5 * np.pi * s * total + 0.5 * np.pi * c / s * g.samples[m]
    return value / g.interval_length


def derivative_series(a: CoefficientVector, t):
    """Term-by-term derivative ``f_N'(t)`` of the cosine series on ``(0, T0)``."""
    x = _normalized(t, a.interval_length, open_interval=True)
    j = np.arange(a.coefficients.size)
    rates = -np.pi * j / a.interval_length
    values = np.sin(np.pi * np.multiply.outer(x, j)) @ (rates * a.coefficients)
    return _unwrap(values, t)


def _check_compatible(f: GridFunction1D, g: GridFunction1D) -> None:
    if f.n_intervals != g.n_intervals:
        raise DomainError(f"grid mismatch: N={f.n_intervals} vs N={g.n_intervals}")
    if f.interval_length != g.interval_length:
        raise DomainError(
            f"interval mismatch: T0={f.interval_length} vs T0={g.interval_length}"
        )


def discrete_form(f: GridFunction1D, g: GridFunction1D):
    """Weighted form ``<f, g>_N = sum_k C_k f_k conj(g_k)``."""
    _check_compatible(f, g)
    value = np.sum(_weights(f.n_intervals) * f.samples * np.conj(g.samples))
    return float(value) if np.isrealobj(value) else complex(value)
