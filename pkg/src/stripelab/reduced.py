"""Minimization of the reduced stripe energy by semi-analytic shooting.

Every stationary trajectory obeys the first integral

    phi'(x)^2 = sin(phi)^2 / beta^2 + alpha^2,     alpha = phi'(0) > 0,

so a trajectory is determined by the rescaled slope a = alpha*beta alone and
its energy is an explicit combination of the kernels I, J, S evaluated at a.
Differentiating that energy along the flight constraint shows

    dF/da  ~  sqrt(a^2 + sin^2 phi(1)) - 2*kappa_tilde     (positive factor),

i.e. stationary slopes are exactly those meeting the Neumann condition
phi'(1) = 2*kappa.  The solver therefore enumerates, per winding count k,
the slopes with sin^2 phi(1) = 4*kappa_tilde^2 - a^2 on either half of the
terminal half-period, evaluates the exact energy of each, and keeps the
global minimum.  A golden-section pass over the raw slope objective is kept
as a fallback when no stationary candidate brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from stripelab.energy import EnergyBreakdown, breakdown_reduced
from stripelab.oracle import alpha0
from stripelab.params import (
    Grid,
    INV_PI,
    Profile,
    ReducedParams,
    Regime,
    REGIME_SUBCRITICAL,
    REGIME_THRESHOLD,
    layer_resolving_grid,
)
from stripelab.quadrature import HALF_PI, QuadratureSettings, integral_J, integral_S
from stripelab.rootfind import BracketError, bracketed_root, golden_min

_SOLVER_QUAD = QuadratureSettings(abs_tol=1e-13, rel_tol=1e-12, max_subdivisions=64)


@dataclass(frozen=True)
class ShootingOptions:
    settings: QuadratureSettings = _SOLVER_QUAD
    alpha_floor: float = 1e-250       # smallest representable rescaled slope
    theta_probes: int = 97            # terminal-angle probe resolution
    log_probe_step: float = 0.35      # spacing of deep-slope probes (in log a)
    root_ftol: float = 1e-13
    substeps_per_layer: int = 1200    # RK4 substeps per beta when profiling
    first_integral_tol: float = 1e-8


DEFAULT_SHOOTING = ShootingOptions()


@dataclass(frozen=True)
class PeriodInfo:
    """Stripe period on the unit interval plus structure residuals."""

    T: float
    N: int
    periodicity_residual: float
    symmetry_residual: float

    def __post_init__(self):
        if not 0.0 < self.T < 1.0:
            raise ValueError("period must lie in (0, 1)")
        if self.N < 1:
            raise ValueError("period count must be at least 1")


@dataclass(frozen=True)
class ShootingResult:
    alpha: float
    alpha_tilde: float
    profile: Profile
    slopes: np.ndarray
    phi_end: float
    energy: float
    neumann_residual: float
    first_integral_residual: float
    period: Optional[PeriodInfo]
    warnings: tuple[str, ...] = ()
    winding: int = 0


# ---------------------------------------------------------------------------
# Exact per-slope quantities (flight angle and energy)
# ---------------------------------------------------------------------------

def _half_period_J(alpha_t: float, settings: QuadratureSettings) -> float:
    return integral_J(alpha_t, HALF_PI, settings)


def _partial_S(alpha_t: float, angle: float, settings: QuadratureSettings) -> float:
    """sin^2-weighted arc integral over [0, angle] for angle in [0, pi]."""
    if angle <= HALF_PI:
        return integral_S(alpha_t, angle, settings)
    half = integral_S(alpha_t, HALF_PI, settings)
    return 2.0 * half - integral_S(alpha_t, math.pi - angle, settings)


def flight_angle(alpha_tilde: float, beta: float,
                 settings: QuadratureSettings = _SOLVER_QUAD) -> float:
    """Angle reached at x = 1 by the increasing flow with rescaled slope a.

    Solves beta * int_0^Phi dy/sqrt(a^2 + sin^2 y) = 1 by unwinding whole
    half-periods and inverting the remaining partial flight.
    """
    if alpha_tilde <= 0.0 or beta <= 0.0:
        raise ValueError("flight_angle needs positive slope and beta")
    half = _half_period_J(alpha_tilde, settings)
    T = 2.0 * beta * half
    windings = int(math.floor(1.0 / T))
    rem = 1.0 - windings * T
    if rem < 0.0:
        windings -= 1
        rem += T
    target = rem / beta  # partial flight time in angle units
    if target <= 0.0:
        return windings * math.pi
    if target >= 2.0 * half:
        return (windings + 1) * math.pi

    if target <= half:
        fun = lambda r: integral_J(alpha_tilde, r, settings) - target
        r = bracketed_root(fun, 0.0, HALF_PI, xtol=1e-15, ftol=1e-13)
    else:
        short = 2.0 * half - target
        fun = lambda r: integral_J(alpha_tilde, r, settings) - short
        r = math.pi - bracketed_root(fun, 0.0, HALF_PI, xtol=1e-15, ftol=1e-13)
    return windings * math.pi + r


def energy_of_slope(alpha_tilde: float, p: ReducedParams,
                    settings: QuadratureSettings = _SOLVER_QUAD) -> float:
    """Exact continuum energy of the first-integral trajectory with slope a.

    F(a) = S-part/(4 beta) + a^2/(8 beta^2) - kappa_tilde * Phi/(2 beta),
    with the sin^2 integral unfolded over the full winding of Phi.
    """
    phi1 = flight_angle(alpha_tilde, p.beta, settings)
    windings, frac = divmod(phi1, math.pi)
    s_total = 2.0 * windings * integral_S(alpha_tilde, HALF_PI, settings) \
        + _partial_S(alpha_tilde, frac, settings)
    return (s_total / (4.0 * p.beta)
            + alpha_tilde**2 / (8.0 * p.beta**2)
            - 0.5 * p.kappa_tilde * phi1 / p.beta)


# ---------------------------------------------------------------------------
# Stationary-slope enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Candidate:
    alpha_tilde: float
    phi_end: float
    winding: int       # completed half-periods before the terminal angle
    upper: bool        # terminal angle on the falling half of sin^2
    energy: float


def _terminal_angle(kappa_tilde: float, alpha_t: float) -> float:
    """Angle theta with sin(theta) = sqrt(4 kt^2 - a^2), clipped to [0, 1]."""
    gap = (2.0 * kappa_tilde - alpha_t) * (2.0 * kappa_tilde + alpha_t)
    return math.asin(math.sqrt(min(max(gap, 0.0), 1.0)))


def _candidate_energy(p: ReducedParams, alpha_t: float, k: int, upper_half: bool,
                      settings: QuadratureSettings) -> _Candidate:
    theta = _terminal_angle(p.kappa_tilde, alpha_t)
    s_half = integral_S(alpha_t, HALF_PI, settings)
    if upper_half:
        phi1 = (k + 1) * math.pi - theta
        s_total = 2.0 * (k + 1) * s_half - integral_S(alpha_t, theta, settings)
    else:
        phi1 = k * math.pi + theta
        s_total = 2.0 * k * s_half + integral_S(alpha_t, theta, settings)
    energy = (s_total / (4.0 * p.beta)
              + alpha_t**2 / (8.0 * p.beta**2)
              - 0.5 * p.kappa_tilde * phi1 / p.beta)
    return _Candidate(alpha_tilde=alpha_t, phi_end=phi1, winding=k,
                      upper=upper_half, energy=energy)


def _flight_defect(p: ReducedParams, alpha_t: float, k: int, upper_half: bool,
                   settings: QuadratureSettings) -> float:
    """beta * (flight time to the candidate terminal angle) - 1."""
    theta = _terminal_angle(p.kappa_tilde, alpha_t)
    half = _half_period_J(alpha_t, settings)
    part = integral_J(alpha_t, theta, settings)
    if upper_half:
        flight = 2.0 * (k + 1) * half - part
    else:
        flight = 2.0 * k * half + part
    return p.beta * flight - 1.0


def _probe_slopes(p: ReducedParams, opts: ShootingOptions) -> np.ndarray:
    """Probe slopes covering both the O(1) and the exponentially small range."""
    kt = p.kappa_tilde
    cap = 2.0 * kt
    lo_bound = math.sqrt(max(0.0, (2.0 * kt - 1.0) * (2.0 * kt + 1.0)))
    thetas = np.linspace(0.0, math.asin(min(1.0, cap)), opts.theta_probes)[1:-1]
    sin_t = np.sin(thetas)
    theta_slopes = np.sqrt(np.maximum((cap - sin_t) * (cap + sin_t), 0.0))
    slopes = [theta_slopes, np.array([cap * (1.0 - 1e-12)])]
    if lo_bound == 0.0:
        lo = max(opts.alpha_floor, 1e-300)
        hi = max(float(np.min(theta_slopes)) if len(theta_slopes) else cap, lo * 10)
        count = int(math.ceil(math.log(hi / lo) / opts.log_probe_step)) + 1
        count = max(count, 8)
        slopes.append(np.exp(np.linspace(math.log(lo), math.log(hi), count)))
    else:
        slopes.append(np.array([lo_bound * (1.0 + 1e-12)]))
    out = np.unique(np.concatenate(slopes))
    return out[(out > 0.0) & (out <= cap)]


def _stationary_candidates(p: ReducedParams, opts: ShootingOptions) -> list[_Candidate]:
    """All slopes meeting the Neumann condition, across winding counts.

    Roots are first located coarsely (their energies are stationary, so the
    energy ranking is insensitive to slope error); only near-optimal ones
    are polished to full precision by the caller.
    """
    settings = opts.settings
    kt = p.kappa_tilde
    probes = _probe_slopes(p, opts)
    if len(probes) < 2:
        return []
    halves = np.array([_half_period_J(a, settings) for a in probes])
    thetas = np.array([_terminal_angle(kt, a) for a in probes])
    partials = np.array([integral_J(a, th, settings) for a, th in zip(probes, thetas)])

    k_max = int(math.floor(1.0 / (2.0 * p.beta * float(np.min(halves))))) + 1
    candidates: list[_Candidate] = []
    for k in range(k_max + 1):
        for upper in (False, True):
            if upper:
                defect = p.beta * (2.0 * (k + 1) * halves - partials) - 1.0
            else:
                defect = p.beta * (2.0 * k * halves + partials) - 1.0
            sign_flip = np.flatnonzero(np.sign(defect[:-1]) * np.sign(defect[1:]) < 0)
            for i in sign_flip:
                lo, hi = probes[i], probes[i + 1]
                fun = lambda t, k=k, upper=upper: _flight_defect(
                    p, math.exp(t), k, upper, settings)
                try:
                    t_root = bracketed_root(fun, math.log(lo), math.log(hi),
                                            xtol=1e-4, ftol=1e-6)
                except BracketError:
                    continue
                a_root = math.exp(t_root)
                candidates.append(_candidate_energy(p, a_root, k, upper, settings))
    return candidates


def _polish_candidate(p: ReducedParams, cand: _Candidate,
                      opts: ShootingOptions) -> _Candidate:
    """Re-solve one stationary slope to full precision near a coarse root."""
    settings = opts.settings
    t0 = math.log(cand.alpha_tilde)
    fun = lambda t: _flight_defect(p, math.exp(t), cand.winding, cand.upper, settings)
    width = 2e-4
    for _ in range(40):
        lo = t0 - width
        hi = min(t0 + width, math.log(2.0 * p.kappa_tilde))
        try:
            t_root = bracketed_root(fun, lo, hi, xtol=1e-13, ftol=opts.root_ftol)
            return _candidate_energy(p, math.exp(t_root), cand.winding,
                                     cand.upper, settings)
        except BracketError:
            width *= 4.0
    return cand


# ---------------------------------------------------------------------------
# Profile integration
# ---------------------------------------------------------------------------

def integrate_profile(alpha: float, p: ReducedParams, grid: Grid,
                      opts: ShootingOptions = DEFAULT_SHOOTING) -> tuple[Profile, np.ndarray]:
    """Integrate the stationary trajectory with initial slope alpha.

    Classical RK4 on the phase-space system (phi, w), w' = sin(2 phi)/(2 b^2),
    so that the first-integral drift of w^2 - sin^2(phi)/b^2 - alpha^2 is an
    honest global accuracy metric rather than zero by construction.  Returns
    the sampled profile and the slope samples w.
    """
    if alpha <= 0.0:
        raise ValueError("initial slope must be positive")
    beta = p.beta
    h = grid.spacing
    sub = max(1, int(math.ceil(h * opts.substeps_per_layer / beta)))
    dt = h / sub
    inv2b2 = 0.5 / (beta * beta)
    sin = math.sin

    values = np.empty(grid.n)
    slopes = np.empty(grid.n)
    u, w = 0.0, alpha
    cu = cw = 0.0  # Kahan compensation: phi reaches O(1/beta), and bare
    # accumulation noise maps through sin^2/beta^2 into the invariant
    values[0], slopes[0] = u, w
    for i in range(1, grid.n):
        for _ in range(sub):
            k1u = w
            k1w = sin(2.0 * u) * inv2b2
            u2 = u + 0.5 * dt * k1u
            k2u = w + 0.5 * dt * k1w
            k2w = sin(2.0 * u2) * inv2b2
            u3 = u + 0.5 * dt * k2u
            k3u = w + 0.5 * dt * k2w
            k3w = sin(2.0 * u3) * inv2b2
            u4 = u + dt * k3u
            k4u = w + dt * k3w
            k4w = sin(2.0 * u4) * inv2b2
            du = dt * (k1u + 2.0 * k2u + 2.0 * k3u + k4u) / 6.0 - cu
            t = u + du
            cu = (t - u) - du
            u = t
            dw = dt * (k1w + 2.0 * k2w + 2.0 * k3w + k4w) / 6.0 - cw
            t = w + dw
            cw = (t - w) - dw
            w = t
        values[i] = u
        slopes[i] = w
    return Profile(grid, values), slopes


def first_integral_residual(values: np.ndarray, slopes: np.ndarray,
                            alpha: float, beta: float) -> float:
    res = slopes**2 - (np.sin(values) / beta) ** 2 - alpha**2
    return float(np.max(np.abs(res)))


# ---------------------------------------------------------------------------
# Period measurement
# ---------------------------------------------------------------------------

def measure_period(profile: Profile) -> Optional[PeriodInfo]:
    """Locate the first crossing of pi and measure structure residuals.

    Returns None when the profile never reaches pi (no stripe formed).
    Residuals are sup norms over linearly interpolated shifted samples:
    periodicity |phi(x+T) - pi - phi(x)| on [0, 1-T] and the half-period
    reflection |phi(x) - (pi - phi(T-x))| on [0, T].
    """
    x = profile.grid.nodes
    v = profile.values
    if v[-1] < math.pi:
        return None
    idx = int(np.argmax(v >= math.pi))
    if idx == 0:
        return None
    x0, x1 = x[idx - 1], x[idx]
    v0, v1 = v[idx - 1], v[idx]
    T = float(x0 + (math.pi - v0) / (v1 - v0) * (x1 - x0))
    if not 0.0 < T < 1.0:
        return None
    N = int(math.floor(1.0 / T))

    mask = x <= 1.0 - T
    shifted = np.interp(x[mask] + T, x, v)
    periodicity = float(np.max(np.abs(shifted - math.pi - v[mask])))

    mask_t = x <= T
    mirrored = np.interp(T - x[mask_t], x, v)
    symmetry = float(np.max(np.abs(v[mask_t] - (math.pi - mirrored))))
    return PeriodInfo(T=T, N=N, periodicity_residual=periodicity,
                      symmetry_residual=symmetry)


# ---------------------------------------------------------------------------
# Main solver
# ---------------------------------------------------------------------------

def _zero_result(p: ReducedParams, grid: Grid) -> ShootingResult:
    prof = Profile(grid, np.zeros(grid.n))
    return ShootingResult(alpha=0.0, alpha_tilde=0.0, profile=prof,
                          slopes=np.zeros(grid.n), phi_end=0.0, energy=0.0,
                          neumann_residual=0.0, first_integral_residual=0.0,
                          period=None, warnings=("zero-drive",))


def _saturated_result(p: ReducedParams, grid: Grid,
                      opts: ShootingOptions) -> ShootingResult:
    """Minimizer when the optimal slope underflows double precision.

    For beta small enough the initial slope scales like exp(-1/beta); once it
    drops below the float range the minimizer is indistinguishable from the
    alpha -> 0 limit: the pure boundary-layer trajectory phi' = sin(phi)/beta
    ending at phi(1) = asin(2 kappa_tilde).
    """
    kt = p.kappa_tilde
    phi1 = math.asin(2.0 * kt)
    amp = math.tan(0.5 * phi1)
    x = grid.nodes
    values = 2.0 * np.arctan(amp * np.exp((x - 1.0) / p.beta))
    values = values - values[0]  # underflow-level shift, pins phi(0) = 0
    slopes = np.sin(values) / p.beta
    prof = Profile(grid, values)
    energy = (integral_S(0.0, phi1, opts.settings) / (4.0 * p.beta)
              - 0.5 * kt * phi1 / p.beta)
    return ShootingResult(
        alpha=float(slopes[0]), alpha_tilde=float(slopes[0]) * p.beta,
        profile=prof, slopes=slopes, phi_end=phi1, energy=energy,
        neumann_residual=abs(math.sin(phi1) / p.beta - 2.0 * p.kappa),
        first_integral_residual=0.0, period=None,
        warnings=("slope-underflow",))


def solve_reduced(p: ReducedParams, grid: Optional[Grid] = None,
                  opts: ShootingOptions = DEFAULT_SHOOTING) -> ShootingResult:
    """Global minimizer of the reduced energy via stationary-slope search."""
    if grid is None:
        grid = layer_resolving_grid(p.beta)
    if p.kappa == 0.0:
        return _zero_result(p, grid)
    settings = opts.settings
    kt = p.kappa_tilde
    warnings: list[str] = []
    if abs(kt - INV_PI) <= 1e-9:
        warnings.append("threshold-regime")

    # Saturation: the winding-free stationary slope lies below the float
    # range; fall back to the exact alpha -> 0 boundary-layer trajectory.
    if kt < 0.5:
        if _flight_defect(p, opts.alpha_floor, 0, False, settings) < 0.0:
            res = _saturated_result(p, grid, opts)
            return replace(res, warnings=res.warnings + tuple(warnings))

    candidates = _stationary_candidates(p, opts)
    if not candidates:
        warnings.append("no-stationary-candidate")
        lo = math.log(max(opts.alpha_floor, 1e-300))
        hi = math.log(2.0 * kt)
        t_best, _ = golden_min(lambda t: energy_of_slope(math.exp(t), p, settings),
                               lo, hi, xtol=1e-12)
        a_best = math.exp(t_best)
        phi1 = flight_angle(a_best, p.beta, settings)
        best = _Candidate(a_best, phi1, int(phi1 // math.pi),
                          energy_of_slope(a_best, p, settings))
    else:
        coarse_best = min(c.energy for c in candidates)
        margin = 1.0 / p.beta
        finalists = [_polish_candidate(p, c, opts) for c in candidates
                     if c.energy <= coarse_best + margin]
        best = min(finalists, key=lambda c: c.energy)

    alpha = best.alpha_tilde / p.beta
    profile, slopes = integrate_profile(alpha, p, grid, opts)
    fint = first_integral_residual(profile.values, slopes, alpha, p.beta)
    neumann = abs(math.hypot(best.alpha_tilde, math.sin(best.phi_end)) / p.beta
                  - 2.0 * p.kappa)
    if fint > opts.first_integral_tol:
        warnings.append("first-integral-drift")
    if neumann > 1e-6 * max(1.0, 2.0 * p.kappa):
        warnings.append("neumann-residual")
    period = measure_period(profile)
    return ShootingResult(
        alpha=alpha, alpha_tilde=best.alpha_tilde, profile=profile,
        slopes=slopes, phi_end=best.phi_end, energy=best.energy,
        neumann_residual=neumann, first_integral_residual=fint,
        period=period, warnings=tuple(warnings), winding=best.winding)


# ---------------------------------------------------------------------------
# Direct discretized minimization (independent cross-check)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectOptions:
    max_iter: int = 200_000
    stop_tol: float = 1e-12
    stop_window: int = 50
    step_scale: float = 1.0


DEFAULT_DIRECT = DirectOptions()


def direct_minimize_reduced(p: ReducedParams, grid: Grid, init: Profile,
                            opts: DirectOptions = DEFAULT_DIRECT
                            ) -> tuple[Profile, EnergyBreakdown]:
    """Projected gradient descent on the trapezoid reduced energy.

    The step applies to the variational (mass-scaled) gradient with initial
    step = spacing^2, halved whenever the energy would increase; phi(0)
    stays pinned at 0, the other end is free (natural Neumann).  Stops when
    the relative energy decrease over a trailing window drops below
    stop_tol, or at the iteration cap (reported via the returned profile,
    not fatal).
    """
    if init.grid != grid:
        raise ValueError("init profile must live on the supplied grid")
    if init.values[0] != 0.0:
        raise ValueError("init must satisfy phi(0) = 0")
    h = grid.spacing
    beta, kappa = p.beta, p.kappa
    phi = init.values.copy()
    if p.kappa == 0.0 and np.all(phi == 0.0):
        return Profile(grid, phi), breakdown_reduced(phi, h, beta, max(kappa, 1e-300))

    sin_w = np.full(grid.n, h)
    sin_w[0] = sin_w[-1] = 0.5 * h
    inv_mass = 1.0 / sin_w

    def energy(arr):
        d = np.diff(arr)
        return (0.125 * float(np.sum(d * d)) / h
                + 0.125 / beta**2 * float(np.sum(sin_w * np.sin(arr) ** 2))
                - 0.5 * kappa * float(arr[-1] - arr[0]))

    def gradient(arr):
        g = np.zeros_like(arr)
        d = np.diff(arr) / (4.0 * h)
        g[:-1] -= d
        g[1:] += d
        g += 0.125 / beta**2 * sin_w * np.sin(2.0 * arr)
        g[-1] -= 0.5 * kappa
        g *= inv_mass
        g[0] = 0.0
        return g

    # Energy is checked on blocks of steps: the explicit step sits well
    # inside the stability region, so per-step checks would only add cost.
    tau = opts.step_scale * h * h
    tau_max = 1.5 * tau
    block = 8
    e_cur = energy(phi)
    history = [e_cur]
    steps = 0
    while steps < opts.max_iter:
        snapshot = phi
        for _ in range(min(block, opts.max_iter - steps)):
            phi = phi - tau * gradient(phi)
            steps += 1
        e_trial = energy(phi)
        if e_trial <= e_cur + 1e-14 * abs(e_cur):
            e_cur = e_trial
            tau = min(tau * 1.02, tau_max)
        else:
            phi = snapshot
            tau *= 0.5
            if tau < 1e-8 * h * h:
                break
            continue
        history.append(e_cur)
        if len(history) > opts.stop_window:
            past = history[-opts.stop_window - 1]
            if past - e_cur <= opts.stop_tol * max(abs(e_cur), 1e-300):
                break
    return Profile(grid, phi), breakdown_reduced(phi, h, beta, kappa)


# ---------------------------------------------------------------------------
# Upper-bound certificates
# ---------------------------------------------------------------------------

def build_test_profile(regime: Regime, p: ReducedParams, grid: Grid,
                       n_transitions: Optional[int] = None) -> Profile:
    """Classical upper-bound construction for the given regime.

    Below threshold: a steep ramp of width beta^3 glued to the falling-layer
    solution of phi' = sin(phi)/beta that ends at asin(2 kappa_tilde).
    Above: a staircase of n equispaced unit transitions of width beta (by
    default n matches the predicted stripe count).  The discretized energy
    of the returned profile upper-bounds the minimum.
    """
    x = grid.nodes
    if p.kappa == 0.0:
        return Profile(grid, np.zeros(grid.n))
    if regime.tag in (REGIME_SUBCRITICAL, REGIME_THRESHOLD):
        phi1 = math.asin(2.0 * p.kappa_tilde)
        amp = math.tan(0.5 * phi1)
        tail = 2.0 * np.arctan(amp * np.exp((x - 1.0) / p.beta))
        ramp_w = p.beta**3
        knee = 2.0 * math.atan(amp * math.exp((ramp_w - 1.0) / p.beta))
        values = np.where(x < ramp_w, x / ramp_w * knee, tail)
        values[0] = 0.0
        return Profile(grid, values)

    if n_transitions is None:
        a0 = alpha0(p.kappa_tilde)
        T = 2.0 * p.beta * integral_J(a0, HALF_PI)
        n_transitions = max(1, int(math.floor(1.0 / T)))
    centers = (np.arange(n_transitions) + 0.5) / n_transitions
    values = np.zeros(grid.n)
    for c in centers:
        values += 2.0 * np.arctan(np.exp((x - c) / p.beta))
    values -= values[0]
    return Profile(grid, values)
