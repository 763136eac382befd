"""Log-log rate fitting for convergence sweeps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Errors below this value are treated as converged-to-noise and dropped.
ERROR_FLOOR = 1e-14


@dataclass(frozen=True)
class RateFit:
    """Least-squares slope of log(error) against log(parameter).

    With errors shrinking as parameter^p the slope is +p; a superpolynomial
    decay shows up as a slope that grows as the sweep is extended.
    """

    pairs: tuple[tuple[float, float], ...]
    slope: float
    intercept: float
    r2: float
    dropped: int


def fit_rate(pairs) -> RateFit:
    """Ordinary least squares on (log parameter, log error).

    Pairs with error below ERROR_FLOOR are excluded (and counted); at least
    three usable pairs are required.
    """
    usable = []
    dropped = 0
    for param, err in pairs:
        if param <= 0.0:
            raise ValueError("sweep parameters must be positive")
        if err < ERROR_FLOOR:
            dropped += 1
        else:
            usable.append((float(param), float(err)))
    if len(usable) < 3:
        raise ValueError(
            f"need at least 3 usable pairs for a rate fit, got {len(usable)} "
            f"({dropped} below the error floor)")
    x = np.log([p for p, _ in usable])
    y = np.log([e for _, e in usable])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return RateFit(pairs=tuple((float(p), float(e)) for p, e in pairs),
                   slope=float(slope), intercept=float(intercept),
                   r2=r2, dropped=dropped)


def geometric_schedule(start: float, factor: float, count: int) -> list[float]:
    """start, start*factor, ... with factor in (0, 1) and count >= 3."""
    if not 0.0 < factor < 1.0:
        raise ValueError("factor must lie in (0, 1)")
    if count < 3:
        raise ValueError("count must be at least 3")
    if start <= 0.0:
        raise ValueError("start must be positive")
    return [start * factor**i for i in range(count)]


def quadratic_envelope_ok(pairs, floor: float = ERROR_FLOOR) -> bool:
    """True when errors decay at least quadratically from the first entry.

    Fallback decay check for sweeps whose later errors sink below the fit
    floor: each error must satisfy err_i <= max(err_0*(p_i/p_0)^2, floor).
    """
    (p0, e0) = pairs[0]
    for p, e in pairs[1:]:
        if e > max(e0 * (p / p0) ** 2, floor):
            return False
    return True
