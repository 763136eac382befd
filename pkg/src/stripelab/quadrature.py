"""Adaptive quadrature for the three pendulum-type integral kernels.

The solvers and the asymptotic predictions are parametrized by integrals of
the form

    I(a, c) = int_0^c sqrt(a^2 + sin^2 y) dy        (arc cost per half stripe)
    J(a, c) = int_0^c dy / sqrt(a^2 + sin^2 y)      (flight time per angle)
    S(a, c) = int_0^c sin^2 y / sqrt(a^2 + sin^2 y) dy

on c in [0, pi/2].  J has a boundary layer of width a at y = 0 and diverges
like log(1/a) as a -> 0; it is integrated in a sinh-stretched variable so the
panel count stays modest even for a ~ 1e-200.  I and S are bounded near 0 and
are handled by plain adaptive panel splitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HALF_PI = math.pi / 2.0

# 15-point Gauss-Legendre rule used on every panel.
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)


class QuadratureError(RuntimeError):
    """Requested tolerance not reached within the subdivision budget."""


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and subdivision budget for the adaptive rule."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 64

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be at least 8")


DEFAULT_SETTINGS = QuadratureSettings()


def _panel_integrals(f, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Gauss-Legendre estimate of int f on each [lo_i, hi_i], vectorized."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    y = mid[:, None] + half[:, None] * _NODES[None, :]
    return half * (f(y) @ _WEIGHTS)


def adaptive_gauss(f, a: float, b: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Integrate f over [a, b] by adaptive bisection of Gauss panels.

    A panel is accepted when its estimate agrees with the sum over its two
    halves to within the width-prorated tolerance.  Raises QuadratureError
    if panels remain unconverged after ``max_subdivisions`` rounds.
    """
    if b <= a:
        return 0.0
    span = b - a
    lo = np.array([a])
    hi = np.array([b])
    coarse = _panel_integrals(f, lo, hi)
    total = 0.0
    for _ in range(settings.max_subdivisions):
        if len(lo) > 100_000:
            raise QuadratureError("quadrature panel count exploded (non-integrable input?)")
        mid = 0.5 * (lo + hi)
        left = _panel_integrals(f, lo, mid)
        right = _panel_integrals(f, mid, hi)
        fine = left + right
        scale = abs(total) + float(np.sum(np.abs(fine)))
        tol = (hi - lo) / span * max(settings.abs_tol, settings.rel_tol * scale)
        done = np.abs(coarse - fine) <= tol
        total += float(np.sum(fine[done]))
        if np.all(done):
            return total
        keep = ~done
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
    raise QuadratureError(
        f"quadrature did not converge after {settings.max_subdivisions} subdivision rounds"
    )


def _check_range(alpha: float, upper: float):
    if upper < -1e-15 or upper > HALF_PI + 1e-12:
        raise ValueError(f"upper limit {upper!r} outside [0, pi/2]")
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")


def integral_I(alpha: float, upper: float = HALF_PI,
               settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """int_0^upper sqrt(alpha^2 + sin^2 y) dy.

    Strictly increasing in both arguments; I(0, pi/2) = 1 and
    I(alpha)/alpha -> pi/2 as alpha -> infinity.
    """
    _check_range(alpha, upper)
    if upper <= 0.0:
        return 0.0

    def f(y):
        return np.hypot(alpha, np.sin(y))

    return adaptive_gauss(f, 0.0, min(upper, HALF_PI), settings)


def integral_J(alpha: float, upper: float = HALF_PI,
               settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """int_0^upper dy / sqrt(alpha^2 + sin^2 y), for alpha > 0.

    Diverges like log(1/alpha) as alpha -> 0; the divergence is physical
    (the flight time through a stripe endpoint), so alpha = 0 is rejected.
    """
    if alpha <= 0.0:
        raise ValueError("integral_J requires alpha > 0")
    _check_range(alpha, upper)
    if upper <= 0.0:
        return 0.0
    upper = min(upper, HALF_PI)

    def f(y):
        return 1.0 / np.hypot(alpha, np.sin(y))

    if alpha >= 0.35:
        return adaptive_gauss(f, 0.0, upper, settings)

    # Small alpha: map [0, y_c] through y = alpha*sinh(s).  The transformed
    # integrand sqrt(alpha^2 + y^2)/sqrt(alpha^2 + sin^2 y) is O(1) and smooth,
    # so the log-wide layer costs only O(1) panels.
    y_c = min(upper, 0.9)
    s_max = math.asinh(y_c / alpha)

    def g(s):
        y = alpha * np.sinh(s)
        return np.hypot(alpha, y) / np.hypot(alpha, np.sin(y))

    value = adaptive_gauss(g, 0.0, s_max, settings)
    if upper > y_c:
        value += adaptive_gauss(f, y_c, upper, settings)
    return value


def integral_S(alpha: float, upper: float = HALF_PI,
               settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """int_0^upper sin^2 y / sqrt(alpha^2 + sin^2 y) dy.

    Computed directly rather than as I - alpha^2 J: near y = 0 the integrand
    vanishes quadratically, so the direct form stays well conditioned for
    small alpha where the identity would subtract a log-divergent product.
    """
    _check_range(alpha, upper)
    if upper <= 0.0:
        return 0.0

    def f(y):
        s = np.sin(y)
        return s * s / np.hypot(alpha, s)

    return adaptive_gauss(f, 0.0, min(upper, HALF_PI), settings)
