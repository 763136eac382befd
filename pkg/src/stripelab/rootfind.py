"""Bracketed scalar root finding and 1D minimization.

Bisection guarantees progress, secant steps give the final digits; no
derivatives required.  Both routines assume the caller supplies a valid
bracket.
"""

from __future__ import annotations

import math


class BracketError(ValueError):
    """The supplied interval does not bracket a root/minimum."""


def bracketed_root(f, lo: float, hi: float, *, xtol: float = 1e-14,
                   ftol: float = 0.0, max_iter: int = 200) -> float:
    """Root of f on [lo, hi] with f(lo), f(hi) of opposite signs.

    Alternates bisection with secant proposals, keeping the bracket valid at
    every step.  Convergence on either |f| <= ftol or bracket width <= xtol
    (absolute, plus a relative floor near large abscissae).
    """
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"no sign change on [{lo!r}, {hi!r}]")
    x_prev, f_prev = lo, flo
    x_cur, f_cur = hi, fhi
    for _ in range(max_iter):
        width = hi - lo
        if width <= xtol + 4.0 * math.ulp(max(abs(lo), abs(hi))):
            break
        # Secant proposal from the two most recent iterates.
        x_new = None
        if f_cur != f_prev:
            cand = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
            margin = 0.01 * width
            if lo + margin < cand < hi - margin:
                x_new = cand
        if x_new is None:
            x_new = 0.5 * (lo + hi)
        f_new = f(x_new)
        x_prev, f_prev = x_cur, f_cur
        x_cur, f_cur = x_new, f_new
        if f_new == 0.0 or abs(f_new) <= ftol:
            return x_new
        if flo * f_new < 0.0:
            hi, fhi = x_new, f_new
        else:
            lo, flo = x_new, f_new
    return 0.5 * (lo + hi)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(f, lo: float, hi: float, *, xtol: float = 1e-12,
               max_iter: int = 300):
    """Golden-section minimum of a unimodal f on [lo, hi].

    Returns (x, f(x)).  On non-unimodal input this still converges to a
    local minimum inside the bracket.
    """
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)
