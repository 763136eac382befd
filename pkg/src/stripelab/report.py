"""Figure rendering for run artifacts.

Every CSV the CLI writes gets a PNG next to it; all rendering goes through
the Agg backend so runs are headless-safe.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_profile_figure(path, x, curves, xlabel="x", ylabel="value", title=None):
    """Plot one or more (label, values) curves against x and save."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for label, values in curves:
        ax.plot(x, values, lw=1.2, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(curves) > 1:
        ax.legend(loc="best", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_rate_figure(path, pairs, slope, intercept, xlabel="parameter"):
    """Log-log error plot with the fitted power law overlaid."""
    params = np.array([p for p, _ in pairs])
    errors = np.array([e for _, e in pairs])
    fig, ax = plt.subplots(figsize=(5.6, 4.2))
    ax.loglog(params, errors, "ko", mfc="w", ms=7, label="measured")
    shown = errors > 0
    if shown.any():
        xs = np.array(sorted(params))
        ax.loglog(xs, np.exp(intercept) * xs**slope, "k:",
                  label=f"slope {slope:.2f}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("error")
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_phase_figure(path, kappa_tildes, betas, stripe_scale, energy_scale):
    """Two-panel phase diagram: N*beta and energy*beta^2 against drive."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.6, 4.0))
    for j, beta in enumerate(betas):
        ax1.plot(kappa_tildes, stripe_scale[:, j], "o-", ms=4, label=f"beta={beta:g}")
        ax2.plot(kappa_tildes, energy_scale[:, j], "o-", ms=4, label=f"beta={beta:g}")
    ax1.axvline(1.0 / np.pi, color="k", ls="--", lw=0.8)
    ax1.set_xlabel("kappa_tilde")
    ax1.set_ylabel("N * beta")
    ax2.axvline(1.0 / np.pi, color="k", ls="--", lw=0.8)
    ax2.set_xlabel("kappa_tilde")
    ax2.set_ylabel("energy * beta^2")
    ax1.legend(fontsize=8)
    ax1.grid(True, alpha=0.3)
    ax2.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
