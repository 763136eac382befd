"""Problem parameters, grids, sampled profiles and regime classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

INV_PI = 1.0 / math.pi


def _as_readonly(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ReducedParams:
    """Parameters of the reduced stripe energy on the unit interval.

    beta is the transition-layer width, kappa the drive strength (the
    Neumann slope at x = 1 is 2*kappa) and kappa_tilde = kappa*beta the
    dimensionless drive that decides the regime.  kappa = 0 is accepted as
    the degenerate no-drive case (the minimizer is identically zero).
    """

    beta: float
    kappa: float
    kappa_tilde: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if not self.beta > 0.0:
            raise ValueError("beta must be positive")
        if self.kappa < 0.0:
            raise ValueError("kappa must be nonnegative")
        if self.kappa_tilde is None:
            object.__setattr__(self, "kappa_tilde", self.kappa * self.beta)
        expected = self.kappa * self.beta
        if abs(self.kappa_tilde - expected) > 1e-14 * max(abs(expected), 1e-300):
            raise ValueError("kappa_tilde inconsistent with kappa*beta")

    @classmethod
    def from_kappa_tilde(cls, beta: float, kappa_tilde: float) -> "ReducedParams":
        return cls(beta=beta, kappa=kappa_tilde / beta, kappa_tilde=kappa_tilde)


@dataclass(frozen=True)
class FullParams:
    """Parameters of the full two-field energy; beta and kappa_tilde derived."""

    epsilon: float
    delta: float
    kappa: float
    beta: float = None  # type: ignore[assignment]
    kappa_tilde: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if not (self.epsilon > 0.0 and self.delta > 0.0):
            raise ValueError("epsilon and delta must be positive")
        if self.kappa < 0.0:
            raise ValueError("kappa must be nonnegative")
        beta = self.epsilon / math.sqrt(self.delta)
        if self.beta is None:
            object.__setattr__(self, "beta", beta)
        elif abs(self.beta - beta) > 1e-12 * beta:
            raise ValueError("beta inconsistent with epsilon/sqrt(delta)")
        if self.kappa_tilde is None:
            object.__setattr__(self, "kappa_tilde", self.kappa * self.beta)

    def reduced(self) -> ReducedParams:
        return ReducedParams(beta=self.beta, kappa=self.kappa, kappa_tilde=self.kappa_tilde)


@dataclass(frozen=True)
class Grid:
    """Uniform grid of n nodes on [0, length]."""

    n: int
    length: float
    nodes: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.n < 16:
            raise ValueError("grids need at least 16 nodes")
        if not self.length > 0.0:
            raise ValueError("length must be positive")
        if self.nodes is None:
            object.__setattr__(self, "nodes", _as_readonly(np.linspace(0.0, self.length, self.n)))
        else:
            nodes = _as_readonly(self.nodes)
            if len(nodes) != self.n:
                raise ValueError("nodes length does not match n")
            if nodes[0] != 0.0 or abs(nodes[-1] - self.length) > 1e-12 * self.length:
                raise ValueError("nodes must run from 0 to length")
            steps = np.diff(nodes)
            if np.any(steps <= 0) or np.max(steps) - np.min(steps) > 1e-12 * steps[0]:
                raise ValueError("nodes must be uniformly increasing")
            object.__setattr__(self, "nodes", nodes)

    @property
    def spacing(self) -> float:
        return self.length / (self.n - 1)

    @classmethod
    def unit(cls, n: int) -> "Grid":
        return cls(n=n, length=1.0)


def layer_resolving_grid(beta: float, nodes_per_layer: int = 64,
                         min_n: int = 256, max_n: int = 1 << 17) -> Grid:
    """Unit-interval grid with >= nodes_per_layer points per beta-layer."""
    n = int(math.ceil(nodes_per_layer / beta)) + 1
    n = max(min_n, min(n, max_n))
    return Grid.unit(n)


@dataclass(frozen=True)
class Profile:
    """Real samples on a grid."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = _as_readonly(self.values)
        if len(values) != self.grid.n:
            raise ValueError("values length does not match grid")
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes


REGIME_SUBCRITICAL = "Subcritical"
REGIME_THRESHOLD = "Threshold"
REGIME_NEAR_THRESHOLD = "NearThreshold"
REGIME_SUPERCRITICAL = "Supercritical"


@dataclass(frozen=True)
class Regime:
    """Regime tag relative to the critical drive 1/pi.

    sub_flag records whether kappa_tilde is below the tie-break value at
    which the per-transition cost function switches its minimum from the
    interior point to pi (relevant only below kappa_tilde = 1/2).
    """

    tag: str
    sub_flag: bool
    threshold_tol: float

    def __post_init__(self):
        if self.tag not in (REGIME_SUBCRITICAL, REGIME_THRESHOLD,
                            REGIME_NEAR_THRESHOLD, REGIME_SUPERCRITICAL):
            raise ValueError(f"unknown regime tag {self.tag!r}")


# Tie-break drive strength, frozen from critical_kappa() in the oracle
# module; duplicated here so classification does not need root finding.
KAPPA_TILDE_CRIT = 0.36230567688835424


def classify_regime(p: ReducedParams, threshold_tol: float = 1e-9,
                    near_margin: float = 0.05) -> Regime:
    """Classify the drive strength against the critical value 1/pi.

    Within threshold_tol of 1/pi the tag is Threshold; above 1/pi but with
    kappa_tilde*pi - 1 <= near_margin the tag is NearThreshold (the regime
    where the optimal slope collapses logarithmically); otherwise the sign
    of kappa_tilde - 1/pi decides.
    """
    if threshold_tol < 0.0:
        raise ValueError("threshold_tol must be nonnegative")
    kt = p.kappa_tilde
    sub_flag = kt < KAPPA_TILDE_CRIT
    if abs(kt - INV_PI) <= threshold_tol:
        tag = REGIME_THRESHOLD
    elif kt < INV_PI:
        tag = REGIME_SUBCRITICAL
    elif kt * math.pi - 1.0 <= near_margin:
        tag = REGIME_NEAR_THRESHOLD
    else:
        tag = REGIME_SUPERCRITICAL
    return Regime(tag=tag, sub_flag=sub_flag, threshold_tol=threshold_tol)


def to_wavefunctions(v: Profile, phi: Profile) -> tuple[Profile, Profile]:
    """Map total amplitude v and mixing angle phi to the two components.

    u1 = v*cos(phi/2), u2 = v*sin(phi/2); pointwise u1^2 + u2^2 = v^2.
    """
    if v.grid != phi.grid:
        raise ValueError("v and phi must share a grid")
    half = phi.values / 2.0
    u1 = Profile(v.grid, v.values * np.cos(half))
    u2 = Profile(v.grid, v.values * np.sin(half))
    return u1, u2
