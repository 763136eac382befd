"""Batch front-end: runs solves and sweeps from a JSON config.

Modes
-----
reduced        one reduced solve: profile CSV + summary JSON (+ PNG)
full           one full solve: v/phi CSVs + summary JSON (+ PNG)
oracle         closed-form predictions only: prediction JSON
sweep          geometric beta sweep with a log-log rate fit: rate CSV/JSON
phase-diagram  table of (N, phi_end, energy*beta^2) over a drive/beta grid

Config fields can be overridden one-to-one by CLI flags.  Exit codes:
0 success, 2 bad config, 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from stripelab.full import FullOptions, compare_to_reduced, minimize_full
from stripelab.oracle import predicted_energy
from stripelab.params import (
    FullParams,
    Grid,
    ReducedParams,
    layer_resolving_grid,
)
from stripelab.rates import fit_rate, geometric_schedule
from stripelab.reduced import solve_reduced
from stripelab import report

MODES = ("reduced", "full", "sweep", "oracle", "phase-diagram")

#: Defaults applied when a config omits a field, one row per field.
DEFAULTS = {
    "out": "runs/out",            # artifact directory
    "grid_n": None,               # solver grid size (None: 64 nodes per layer)
    "threshold_tol": 1e-9,        # |kappa_tilde - 1/pi| treated as threshold
    "figures": True,              # render PNGs next to CSVs
    "workers": 1,                 # task pool width for sweep/phase-diagram
    "sweep_error": "phi_end",     # sweep error metric (phi_end | energy)
    "sweep_beta": {"start": 0.1, "factor": 0.5, "count": 4},
    "phase_kappa_tilde": {"start": 0.1, "stop": 1.0, "step": 0.05},
    "phase_betas": [0.04, 0.02, 0.01],
    "full_max_iter": 40_000,
}


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending field."""


@dataclass
class RunConfig:
    mode: str
    out: Path
    grid_n: Optional[int]
    quiet: bool = False
    figures: bool = True
    workers: int = 1
    threshold_tol: float = 1e-9
    # reduced/oracle/sweep parameters
    beta: Optional[float] = None
    kappa: Optional[float] = None
    kappa_tilde: Optional[float] = None
    # full parameters
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    full_max_iter: int = 40_000
    # sweep schedule
    sweep_beta: dict = field(default_factory=lambda: dict(DEFAULTS["sweep_beta"]))
    sweep_error: str = "phi_end"
    # phase diagram
    phase_kappa_tilde: dict = field(default_factory=lambda: dict(DEFAULTS["phase_kappa_tilde"]))
    phase_betas: list = field(default_factory=lambda: list(DEFAULTS["phase_betas"]))


def _reduced_params(cfg: RunConfig, beta: Optional[float] = None) -> ReducedParams:
    beta = beta if beta is not None else cfg.beta
    if beta is None:
        raise ConfigError("beta: required for this mode")
    if beta <= 0:
        raise ConfigError("beta: must be positive")
    if cfg.kappa_tilde is not None:
        return ReducedParams.from_kappa_tilde(beta, cfg.kappa_tilde)
    if cfg.kappa is not None:
        return ReducedParams(beta=beta, kappa=cfg.kappa)
    raise ConfigError("kappa/kappa_tilde: one of them is required")


def load_config(path: Optional[str], overrides: dict) -> RunConfig:
    raw: dict = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text())
        except FileNotFoundError:
            raise ConfigError(f"config: file not found: {path}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON ({exc})")
        if not isinstance(raw, dict):
            raise ConfigError("config: top level must be an object")
    merged = {**raw, **{k: v for k, v in overrides.items() if v is not None}}

    mode = merged.get("mode")
    if mode not in MODES:
        raise ConfigError(f"mode: expected one of {MODES}, got {mode!r}")
    known = {f for f in RunConfig.__dataclass_fields__}
    for key in merged:
        if key not in known:
            raise ConfigError(f"{key}: unknown config field")

    cfg = RunConfig(
        mode=mode,
        out=Path(merged.get("out", DEFAULTS["out"])),
        grid_n=merged.get("grid_n", DEFAULTS["grid_n"]),
        quiet=bool(merged.get("quiet", False)),
        figures=bool(merged.get("figures", DEFAULTS["figures"])),
        workers=int(merged.get("workers", DEFAULTS["workers"])),
        threshold_tol=float(merged.get("threshold_tol", DEFAULTS["threshold_tol"])),
        beta=merged.get("beta"),
        kappa=merged.get("kappa"),
        kappa_tilde=merged.get("kappa_tilde"),
        epsilon=merged.get("epsilon"),
        delta=merged.get("delta"),
        full_max_iter=int(merged.get("full_max_iter", DEFAULTS["full_max_iter"])),
        sweep_beta=merged.get("sweep_beta", dict(DEFAULTS["sweep_beta"])),
        sweep_error=merged.get("sweep_error", DEFAULTS["sweep_error"]),
        phase_kappa_tilde=merged.get("phase_kappa_tilde", dict(DEFAULTS["phase_kappa_tilde"])),
        phase_betas=merged.get("phase_betas", list(DEFAULTS["phase_betas"])),
    )
    if cfg.grid_n is not None and int(cfg.grid_n) < 16:
        raise ConfigError("grid_n: must be at least 16")
    if cfg.workers < 1:
        raise ConfigError("workers: must be at least 1")
    if cfg.sweep_error not in ("phi_end", "energy"):
        raise ConfigError("sweep_error: expected 'phi_end' or 'energy'")
    sched = cfg.sweep_beta
    for key in ("start", "factor", "count"):
        if key not in sched:
            raise ConfigError(f"sweep_beta.{key}: missing")
    if not 0.0 < float(sched["factor"]) < 1.0:
        raise ConfigError("sweep_beta.factor: must lie in (0, 1)")
    if int(sched["count"]) < 3:
        raise ConfigError("sweep_beta.count: must be at least 3 for a rate fit")
    return cfg


# ---------------------------------------------------------------------------
# Artifact writers
# ---------------------------------------------------------------------------

def write_profile_csv(path: Path, x: np.ndarray, values: np.ndarray):
    with open(path, "w") as fh:
        fh.write("x,value\n")
        for xi, vi in zip(x, values):
            fh.write(f"{xi:.17e},{vi:.17e}\n")


def write_json(path: Path, payload: dict):
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _grid_for(cfg: RunConfig, beta: float) -> Grid:
    if cfg.grid_n is not None:
        return Grid.unit(int(cfg.grid_n))
    return layer_resolving_grid(beta)


# ---------------------------------------------------------------------------
# Mode runners
# ---------------------------------------------------------------------------

def _oracle_payload(p: ReducedParams, threshold_tol: float) -> dict:
    pred = predicted_energy(p, threshold_tol=threshold_tol)
    payload = {
        "beta": p.beta,
        "kappa": p.kappa,
        "kappa_tilde": p.kappa_tilde,
        "regime": pred.regime.tag,
        "sub_flag": pred.regime.sub_flag,
        "phi_end": pred.phi_end,
        "energy_leading": pred.energy_leading,
        "energy_order": pred.energy_order,
        "threshold_warning": pred.threshold_warning,
    }
    if pred.alpha0 is not None:
        payload.update({
            "alpha0": pred.alpha0,
            "period_T": pred.period_T,
            "period_bounds": list(pred.period_bounds),
            "stripe_count_scale": list(pred.stripe_count_scale),
        })
    if pred.energy_leading_large_drive is not None:
        payload["energy_leading_large_drive"] = pred.energy_leading_large_drive
    return payload


def run_oracle(cfg: RunConfig) -> int:
    p = _reduced_params(cfg)
    payload = _oracle_payload(p, cfg.threshold_tol)
    cfg.out.mkdir(parents=True, exist_ok=True)
    write_json(cfg.out / "prediction.json", payload)
    if not cfg.quiet:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def run_reduced(cfg: RunConfig) -> int:
    p = _reduced_params(cfg)
    grid = _grid_for(cfg, p.beta)
    result = solve_reduced(p, grid=grid)
    pred = predicted_energy(p, threshold_tol=cfg.threshold_tol)
    cfg.out.mkdir(parents=True, exist_ok=True)
    write_profile_csv(cfg.out / "profile.csv", grid.nodes, result.profile.values)
    summary = {
        "mode": "reduced",
        "beta": p.beta, "kappa": p.kappa, "kappa_tilde": p.kappa_tilde,
        "grid_n": grid.n,
        "alpha": result.alpha, "alpha_tilde": result.alpha_tilde,
        "phi_end": result.phi_end,
        "energy": result.energy,
        "neumann_residual": result.neumann_residual,
        "first_integral_residual": result.first_integral_residual,
        "winding": result.winding,
        "warnings": list(result.warnings),
        "regime": pred.regime.tag,
        "oracle": {
            "phi_end": pred.phi_end,
            "energy_leading": pred.energy_leading,
            "phi_end_delta": result.phi_end - pred.phi_end,
            "energy_delta": result.energy - pred.energy_leading,
        },
    }
    if result.period is not None:
        summary["period"] = {
            "T": result.period.T, "N": result.period.N,
            "periodicity_residual": result.period.periodicity_residual,
            "symmetry_residual": result.period.symmetry_residual,
        }
    write_json(cfg.out / "summary.json", summary)
    if cfg.figures:
        report.save_profile_figure(cfg.out / "profile.png", grid.nodes,
                                   [("phi", result.profile.values)],
                                   ylabel="phi",
                                   title=f"reduced minimizer (kt={p.kappa_tilde:g}, beta={p.beta:g})")
    if not cfg.quiet:
        print(f"energy={result.energy:.12g} phi_end={result.phi_end:.12g} "
              f"winding={result.winding}")
    return 0


def run_full(cfg: RunConfig) -> int:
    for name in ("epsilon", "delta", "kappa"):
        if getattr(cfg, name) is None:
            raise ConfigError(f"{name}: required for full mode")
    p = FullParams(epsilon=cfg.epsilon, delta=cfg.delta, kappa=cfg.kappa)
    grid = _grid_for(cfg, min(p.epsilon, p.beta))
    sol = minimize_full(p, grid, opts=FullOptions(max_iter=cfg.full_max_iter))
    red = solve_reduced(p.reduced())
    rep = compare_to_reduced(sol, red, p)
    cfg.out.mkdir(parents=True, exist_ok=True)
    write_profile_csv(cfg.out / "profile_v.csv", grid.nodes, sol.v.values)
    write_profile_csv(cfg.out / "profile_phi.csv", grid.nodes, sol.phi.values)
    summary = {
        "mode": "full",
        "epsilon": p.epsilon, "delta": p.delta, "kappa": p.kappa,
        "beta": p.beta, "kappa_tilde": p.kappa_tilde, "grid_n": grid.n,
        "converged": sol.converged, "iterations": sol.iterations,
        "lambda": sol.lam,
        "energy": sol.energy.as_dict(),
        "el_residuals": list(sol.el_residuals),
        "bc_residuals": list(sol.bc_residuals),
        "first_integral_drift": sol.first_integral_drift,
        "first_integral_drift_lambda2": sol.first_integral_drift_lambda2,
        "warnings": list(sol.warnings),
        "reduced_comparison": {
            "energy_ratio_gap": rep.energy_ratio_gap,
            "v_deviation_inf": rep.v_deviation_inf,
            "phi_end_gap": rep.phi_end_gap,
            "v_energy_ratio": rep.v_energy_ratio,
            "eps2_over_delta": rep.eps2_over_delta,
            "delta_over_eps": rep.delta_over_eps,
        },
    }
    write_json(cfg.out / "summary.json", summary)
    if cfg.figures:
        report.save_profile_figure(cfg.out / "profiles.png", grid.nodes,
                                   [("v", sol.v.values), ("phi", sol.phi.values)],
                                   title=f"full minimizer (eps={p.epsilon:g}, delta={p.delta:g})")
    if not cfg.quiet:
        print(f"G={sol.energy.total:.12g} converged={sol.converged} "
              f"iterations={sol.iterations}")
    return 0 if sol.converged else 3


def _sweep_entry(cfg: RunConfig, beta: float):
    if cfg.kappa_tilde is not None:
        p = ReducedParams.from_kappa_tilde(beta, cfg.kappa_tilde)
    elif cfg.kappa is not None:
        p = ReducedParams(beta=beta, kappa=cfg.kappa)
    else:
        raise ConfigError("kappa/kappa_tilde: one of them is required")
    result = solve_reduced(p, grid=_grid_for(cfg, beta))
    pred = predicted_energy(p, threshold_tol=cfg.threshold_tol)
    if cfg.sweep_error == "phi_end":
        err = abs(result.phi_end - pred.phi_end)
    else:
        err = abs(result.energy - pred.energy_leading)
    return beta, err, result.energy, result.phi_end


def run_sweep(cfg: RunConfig) -> int:
    sched = cfg.sweep_beta
    betas = geometric_schedule(float(sched["start"]), float(sched["factor"]),
                               int(sched["count"]))
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        rows = list(pool.map(lambda b: _sweep_entry(cfg, b), betas))
    cfg.out.mkdir(parents=True, exist_ok=True)
    with open(cfg.out / "rate.csv", "w") as fh:
        fh.write("beta,error,energy,phi_end\n")
        for beta, err, energy, phi_end in rows:
            fh.write(f"{beta:.17e},{err:.17e},{energy:.17e},{phi_end:.17e}\n")
    pairs = [(beta, err) for beta, err, _, _ in rows]
    payload = {"mode": "sweep", "error_metric": cfg.sweep_error,
               "pairs": [[b, e] for b, e in pairs]}
    try:
        fit = fit_rate(pairs)
        payload.update({"slope": fit.slope, "r2": fit.r2, "dropped": fit.dropped})
        if cfg.figures:
            report.save_rate_figure(cfg.out / "rate.png", pairs, fit.slope,
                                    fit.intercept, xlabel="beta")
    except ValueError as exc:
        payload.update({"slope": None, "fit_error": str(exc)})
    write_json(cfg.out / "rate.json", payload)
    if not cfg.quiet:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _phase_entry(cfg: RunConfig, kt: float, beta: float):
    p = ReducedParams.from_kappa_tilde(beta, kt)
    result = solve_reduced(p, grid=_grid_for(cfg, beta))
    n_stripes = result.period.N if result.period is not None else 0
    return kt, beta, n_stripes, result.phi_end, result.energy * beta**2


def run_phase_diagram(cfg: RunConfig) -> int:
    sched = cfg.phase_kappa_tilde
    for key in ("start", "stop", "step"):
        if key not in sched:
            raise ConfigError(f"phase_kappa_tilde.{key}: missing")
    start, stop, step = float(sched["start"]), float(sched["stop"]), float(sched["step"])
    if step <= 0 or stop < start:
        raise ConfigError("phase_kappa_tilde: need start <= stop and step > 0")
    kts = [round(start + i * step, 12) for i in range(int((stop - start) / step + 1.5))]
    kts = [k for k in kts if k <= stop + 1e-12]
    betas = [float(b) for b in cfg.phase_betas]
    if not betas:
        raise ConfigError("phase_betas: must be nonempty")
    tasks = [(kt, beta) for kt in kts for beta in betas]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        rows = list(pool.map(lambda t: _phase_entry(cfg, *t), tasks))
    cfg.out.mkdir(parents=True, exist_ok=True)
    with open(cfg.out / "phase.csv", "w") as fh:
        fh.write("kappa_tilde,beta,stripes,phi_end,energy_beta2\n")
        for kt, beta, n_str, phi_end, e2 in rows:
            fh.write(f"{kt:.17e},{beta:.17e},{n_str},{phi_end:.17e},{e2:.17e}\n")
    if cfg.figures:
        stripe = np.array([[r[2] * r[1] for r in rows if r[0] == kt] for kt in kts])
        energy = np.array([[r[4] for r in rows if r[0] == kt] for kt in kts])
        report.save_phase_figure(cfg.out / "phase.png", kts, betas, stripe, energy)
    if not cfg.quiet:
        print(f"phase diagram: {len(rows)} entries -> {cfg.out / 'phase.csv'}")
    return 0


RUNNERS = {
    "reduced": run_reduced,
    "full": run_full,
    "oracle": run_oracle,
    "sweep": run_sweep,
    "phase-diagram": run_phase_diagram,
}


def run(cfg: RunConfig) -> int:
    return RUNNERS[cfg.mode](cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stripelab",
        description="Stripe-phase energy solvers and asymptotic checks.")
    sub = parser.add_subparsers(dest="mode")
    for mode in MODES:
        sp = sub.add_parser(mode)
        sp.add_argument("--config", default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--grid", type=int, default=None, dest="grid_n")
        sp.add_argument("--quiet", action="store_true", default=None)
        sp.add_argument("--beta", type=float, default=None)
        sp.add_argument("--kappa", type=float, default=None)
        sp.add_argument("--kappa-tilde", type=float, default=None, dest="kappa_tilde")
        sp.add_argument("--epsilon", type=float, default=None)
        sp.add_argument("--delta", type=float, default=None)
        sp.add_argument("--workers", type=int, default=None)
        sp.add_argument("--no-figures", action="store_false", dest="figures",
                        default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.mode is None:
        print("error: a mode subcommand is required "
              f"(one of {', '.join(MODES)})", file=sys.stderr)
        return 2
    overrides = {k: v for k, v in vars(args).items() if k not in ("config",)}
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # solver failure: partial artifacts stay on disk
        print(f"solver error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
