"""Numerical laboratory for striped 1D spin-orbit-coupled condensates."""

from stripelab.energy import EnergyBreakdown, breakdown_full, breakdown_reduced
from stripelab.full import (
    FullOptions,
    FullReducedReport,
    FullSolution,
    blowup_rescale,
    compare_to_reduced,
    energy_full,
    minimize_full,
    residuals_full,
)
from stripelab.oracle import (
    OraclePrediction,
    alpha0,
    boundary_layer_psi0,
    critical_kappa,
    h_of_slope,
    limit_profile_phi0,
    near_threshold_prediction,
    predicted_energy,
    transition_f,
)
from stripelab.params import (
    FullParams,
    Grid,
    KAPPA_TILDE_CRIT,
    Profile,
    ReducedParams,
    Regime,
    classify_regime,
    layer_resolving_grid,
    to_wavefunctions,
)
from stripelab.quadrature import (
    QuadratureError,
    QuadratureSettings,
    integral_I,
    integral_J,
    integral_S,
)
from stripelab.rates import RateFit, fit_rate, geometric_schedule
from stripelab.reduced import (
    DirectOptions,
    PeriodInfo,
    ShootingOptions,
    ShootingResult,
    build_test_profile,
    direct_minimize_reduced,
    energy_of_slope,
    flight_angle,
    integrate_profile,
    measure_period,
    solve_reduced,
)

__all__ = [
    "DirectOptions",
    "EnergyBreakdown",
    "FullOptions",
    "FullParams",
    "FullReducedReport",
    "FullSolution",
    "Grid",
    "KAPPA_TILDE_CRIT",
    "OraclePrediction",
    "PeriodInfo",
    "Profile",
    "QuadratureError",
    "QuadratureSettings",
    "RateFit",
    "ReducedParams",
    "Regime",
    "ShootingOptions",
    "ShootingResult",
    "alpha0",
    "blowup_rescale",
    "boundary_layer_psi0",
    "breakdown_full",
    "breakdown_reduced",
    "build_test_profile",
    "classify_regime",
    "compare_to_reduced",
    "critical_kappa",
    "direct_minimize_reduced",
    "energy_full",
    "energy_of_slope",
    "fit_rate",
    "flight_angle",
    "geometric_schedule",
    "h_of_slope",
    "integral_I",
    "integral_J",
    "integral_S",
    "integrate_profile",
    "layer_resolving_grid",
    "limit_profile_phi0",
    "measure_period",
    "minimize_full",
    "near_threshold_prediction",
    "predicted_energy",
    "residuals_full",
    "solve_reduced",
    "to_wavefunctions",
]
