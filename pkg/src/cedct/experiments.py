"""Tables behind the figure reproductions.

Each experiment returns a list of :class:`Table` objects: named, ordered
columns of equal length, ready to be written as CSV or plotted.  One-dimensional
curves are sampled with ``points`` evaluation points per knot interval, so
every knot is one of the evaluation points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from cedct.constants import DEFAULT_POINTS_PER_INTERVAL
from cedct.dft import (
    cedft_evaluate,
    cft_coefficients,
    cft_evaluate,
    dft_forward,
    truncated_series,
    truncated_series_derivative,
)
from cedct.functions import ExpPlusGauss, FlatTop, TwoGauss, crossed_ellipsoids, tilted_ellipsoids
from cedct.errors import DomainError
from cedct.multidim import GridFunctionND, evaluate_nd_grid, forward_nd
from cedct.spectral import GridFunction1D, derivative_series, evaluate, forward

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")


@dataclass
class Table:
    name: str
    columns: dict[str, np.ndarray] = field(default_factory=dict)
    title: str = ""

    def __len__(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0


def curve_grid(n_intervals: int, points: int = DEFAULT_POINTS_PER_INTERVAL, interval_length: float = 1.0) -> np.ndarray:
    """Uniform evaluation points, ``points`` per knot interval, knots included."""
    if points < 1:
        raise DomainError("points per interval must be >= 1")
    steps = n_intervals * points
    return np.arange(steps + 1) / steps * interval_length


def _knot_index(n_intervals: int, points: int) -> np.ndarray:
    k = np.full(n_intervals * points + 1, np.nan)
    k[::points] = np.arange(n_intervals + 1)
    return k


def fig1(n_values: Sequence[int] = (10, 14), points: int = DEFAULT_POINTS_PER_INTERVAL, order=None) -> list[Table]:
    """Cosine interpolant of two narrow Gaussians against the CFT polynomial of order N/2."""
    func = TwoGauss()
    tables = []
    for n in n_values:
        k_order = order if order is not None else n // 2
        t = curve_grid(n, points)
        g = func(t)
        f = evaluate(forward(GridFunction1D.from_function(func, n)), t)
        p = cft_evaluate(cft_coefficients(func, k_order), t)
        tables.append(Table(f"fig1_N{n}", {
            "t": t, "k": _knot_index(n, points), "g": g, "f_N": f, f"P_{k_order}": p,
            "err_f_N": f - g, f"err_P_{k_order}": p - g,
        }, f"two Gaussians, N={n}, K={k_order}"))
    return tables


def fig2(n_values: Sequence[int] = (16, 32, 64), points: int = DEFAULT_POINTS_PER_INTERVAL) -> list[Table]:
    """Naive DFT extension against the cosine interpolant for a steep flat-top pulse."""
    func = FlatTop()
    tables = []
    for n in n_values:
        t = curve_grid(n, points)
        grid = GridFunction1D.from_function(func, n)
        f = evaluate(forward(grid), t)
        h = cedft_evaluate(dft_forward(grid), t)
        tables.append(Table(f"fig2_N{n}", {
            "t": t, "k": _knot_index(n, points), "g": func(t), "f_N": f,
            "h_N_real": h.real, "h_N_imag": h.imag,
        }, f"flat-top pulse, N={n}"))
    return tables


def fig3(n_values: Sequence[int] = (16,), orders: Sequence[int] = (6, 8), points: int = DEFAULT_POINTS_PER_INTERVAL) -> list[Table]:
    """Half-spectrum DFT series of several orders against the cosine interpolant."""
    func = TwoGauss(sigma1=0.07, sigma2=0.2)
    tables = []
    for n in n_values:
        t = curve_grid(n, points)
        grid = GridFunction1D.from_function(func, n)
        g = func(t)
        f = evaluate(forward(grid), t)
        u = dft_forward(grid)
        columns = {"t": t, "k": _knot_index(n, points), "g": g, "f_N": f}
        errors = {"err_f_N": f - g}
        for order in orders:
            s = truncated_series(u, order, t)
            columns[f"s_{order}"] = s
            errors[f"err_s_{order}"] = s - g
        columns.update(errors)
        tables.append(Table(f"fig3_N{n}", columns, f"two Gaussians (0.07, 0.2), N={n}"))
    return tables


def fig4(n_values: Sequence[int] = (14, 140), points: int = DEFAULT_POINTS_PER_INTERVAL, order=None) -> list[Table]:
    """Values and derivatives of the cosine interpolant and the half-spectrum DFT series.

    Derivative columns are NaN (written as empty cells) at the two endpoints.
    """
    func = ExpPlusGauss()
    tables = []
    for n in n_values:
        k_order = order if order is not None else n // 2
        t = curve_grid(n, points)
        grid = GridFunction1D.from_function(func, n)
        a = forward(grid)
        u = dft_forward(grid)
        inner = t[1:-1]
        fprime = np.full(t.shape, np.nan)
        sprime = np.full(t.shape, np.nan)
        gprime = np.full(t.shape, np.nan)
        fprime[1:-1] = derivative_series(a, inner)
        sprime[1:-1] = truncated_series_derivative(u, k_order, inner)
        gprime[1:-1] = func.derivative(inner)
        tables.append(Table(f"fig4_N{n}", {
            "t": t, "k": _knot_index(n, points), "g": func(t), "f_N": evaluate(a, t),
            f"s_{k_order}": truncated_series(u, k_order, t),
            "g_prime": gprime, "f_N_prime": fprime, f"s_{k_order}_prime": sprime,
        }, f"exp + Gaussian, N={n}, K={k_order}"))
    return tables


def _field_table(name: str, func, n: int, refinement: int, title: str) -> Table:
    grid = GridFunctionND.from_function(func, (n, n))
    lattice = evaluate_nd_grid(forward_nd(grid), refinement).samples
    axis = np.arange(n * refinement + 1) / (n * refinement)
    x, y = np.meshgrid(axis, axis, indexing="ij")
    exact = func(x, y)
    return Table(name, {
        "x": x.ravel(), "y": y.ravel(), "G": exact.ravel(), "F": lattice.ravel(),
        "err": (lattice - exact).ravel(),
    }, title)


def fig5(n_values: Sequence[int] = (20,), refinement: int = 3) -> list[Table]:
    """Crossed narrow ellipsoids (transverse width half a cell) on an N x N grid."""
    return [_field_table(f"fig5_N{n}", crossed_ellipsoids(), n, refinement, f"crossed ellipsoids, M=N={n}")
            for n in n_values]


def fig6(n_values: Sequence[int] = (20,), refinement: int = 3) -> list[Table]:
    """Tilted ellipsoids (transverse width one cell) on an N x N grid."""
    return [_field_table(f"fig6_N{n}", tilted_ellipsoids(), n, refinement, f"tilted ellipsoids, M=N={n}")
            for n in n_values]


def run(which: str, n_values=None, orders=None, points: int = DEFAULT_POINTS_PER_INTERVAL) -> list[Table]:
    """Dispatch by figure id with optional overrides of N and K."""
    kwargs = {}
    if n_values:
        kwargs["n_values"] = tuple(n_values)
    if which == "fig1":
        return fig1(points=points, order=orders[0] if orders else None, **kwargs)
    if which == "fig2":
        return fig2(points=points, **kwargs)
    if which == "fig3":
        return fig3(points=points, orders=tuple(orders) if orders else (6, 8), **kwargs)
    if which == "fig4":
        return fig4(points=points, order=orders[0] if orders else None, **kwargs)
    if which == "fig5":
        return fig5(**kwargs)
    if which == "fig6":
        return fig6(**kwargs)
    raise DomainError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")
