"""Analytic test functions used by the experiments and their derivatives."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Gauss:
    """``exp(-(t/sigma)^2 / 2)``."""

    sigma: float = 1.0 / 3.0

    def __call__(self, t):
        return np.exp(-0.5 * (np.asarray(t) / self.sigma) ** 2)

    def derivative(self, t):
        t = np.asarray(t)
        return -t / self.sigma**2 * self(t)


@dataclass(frozen=True)
class TwoGauss:
    """Sum of two Gaussian bumps ``A_i exp(-((t - t_i)/sigma_i)^2 / 2)``."""

    a1: float = 2.0
    a2: float = 1.5
    sigma1: float = 0.05
    sigma2: float = 0.05
    t1: float = 0.42
    t2: float = 0.56

    def _bump(self, t, amplitude, sigma, center):
        return amplitude * np.exp(-0.5 * ((t - center) / sigma) ** 2)

    def __call__(self, t):
        t = np.asarray(t)
        return self._bump(t, self.a1, self.sigma1, self.t1) + self._bump(t, self.a2, self.sigma2, self.t2)

    def derivative(self, t):
        t = np.asarray(t)
        return (
            -(t - self.t1) / self.sigma1**2 * self._bump(t, self.a1, self.sigma1, self.t1)
            - (t - self.t2) / self.sigma2**2 * self._bump(t, self.a2, self.sigma2, self.t2)
        )


@dataclass(frozen=True)
class FlatTop:
    """Super-Gaussian ``A exp(-((t - t0)/a)^power)`` with steep flanks.

    ``power`` must be even.
    """

    amplitude: float = 2.0
    width: float = 0.15
    power: int = 6
    center: float = 0.5

    def __call__(self, t):
        return self.amplitude * np.exp(-(((np.asarray(t) - self.center) / self.width) ** self.power))

    def derivative(self, t):
        u = (np.asarray(t) - self.center) / self.width
        return -self.power * u ** (self.power - 1) / self.width * self(t)


@dataclass(frozen=True)
class ExpPlusGauss:
    """``exp(-4t) + exp(-((t - 0.5)/sigma)^2 / 2) / 2``; unequal end values."""

    sigma: float = 0.07

    def __call__(self, t):
        t = np.asarray(t)
        return np.exp(-4.0 * t) + 0.5 * np.exp(-0.5 * ((t - 0.5) / self.sigma) ** 2)

    def derivative(self, t):
        t = np.asarray(t)
        bump = 0.5 * np.exp(-0.5 * ((t - 0.5) / self.sigma) ** 2)
        return -4.0 * np.exp(-4.0 * t) - (t - 0.5) / self.sigma**2 * bump


@dataclass(frozen=True)
class Ellipsoid:
    """Rotated 2-D Gaussian with long axis at ``angle`` (degrees) from the x axis."""

    x0: float
    y0: float
    sigma_long: float
    sigma_short: float
    angle: float
    amplitude: float = 1.0

    def __call__(self, x, y):
        phi = np.deg2rad(self.angle)
        dx, dy = np.asarray(x) - self.x0, np.asarray(y) - self.y0
        along = dx * np.cos(phi) + dy * np.sin(phi)
        across = -dx * np.sin(phi) + dy * np.cos(phi)
        return self.amplitude * np.exp(
            -0.5 * (along / self.sigma_long) ** 2 - 0.5 * (across / self.sigma_short) ** 2
        )


@dataclass(frozen=True)
class EllipsoidPair:
    """Sum of two :class:`Ellipsoid` fields."""

    first: Ellipsoid
    second: Ellipsoid

    def __call__(self, x, y):
        return self.first(x, y) + self.second(x, y)


def crossed_ellipsoids(sigma_short: float = 0.025, sigma_long: float = 0.15) -> EllipsoidPair:
    """Two ellipsoids with perpendicular long axes (the ``fig5`` field)."""
    return EllipsoidPair(
        Ellipsoid(0.40, 0.45, sigma_long, sigma_short, 30.0),
        Ellipsoid(0.60, 0.55, sigma_long, sigma_short, 120.0),
    )


def tilted_ellipsoids(sigma_short: float = 0.05, sigma_long: float = 0.2) -> EllipsoidPair:
    """Two ellipsoids at 20 degrees to each other with nearby peaks (the ``fig6`` field)."""
    return EllipsoidPair(
        Ellipsoid(0.45, 0.48, sigma_long, sigma_short, 35.0),
        Ellipsoid(0.56, 0.52, sigma_long, sigma_short, 55.0),
    )
