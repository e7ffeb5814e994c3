"""Figures rendered to self-contained SVG files.

Output is byte-stable: the SVG hash salt is fixed, the date metadata is
dropped and text is kept as text with a generic font family.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from dualphillips.fileio import EmpiricalRow  # noqa: E402
from dualphillips.model import ModelParams, aggregate_demand_l2, aggregate_equilibrium  # noqa: E402
from dualphillips.perturbation import wbar_of_L_primary, wbar_of_L_secondary  # noqa: E402
from dualphillips.statics import (  # noqa: E402
    FlatteningResult,
    PhillipsCurve,
    RatioLine,
    RatioScenario,
    reparametrize_supply,
    solve_equal_ratio,
    solve_single_ratio,
)

STYLE = {
    "svg.hashsalt": "dualphillips",
    "svg.fonttype": "none",
    "font.family": "sans-serif",
    "font.size": 11,
    "axes.labelsize": 12,
    "lines.linewidth": 1.6,
    "figure.figsize": (6.4, 4.4),
    "axes.spines.top": False,
    "axes.spines.right": False,
}


@contextmanager
def _figure(**kw):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(**kw)
        try:
            yield fig, ax
        finally:
            plt.close(fig)


def _save(fig, path: Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    return path


def plot_supply_demand(params: ModelParams, path: Path, n: int = 200) -> Path:
    """Secondary labor demand and supply on the (L2, w2) plane."""
    eq = aggregate_equilibrium(params)
    w2 = np.linspace(0.6 * eq.w2, 1.6 * eq.w2, n)
    demand = np.array([aggregate_demand_l2(w, params) for w in w2])
    supply = params.B * w2**params.beta
    keep = demand >= 0
    with _figure() as (fig, ax):
        ax.plot(demand[keep], w2[keep], gid="demand", color="tab:blue", label=r"demand $L_2^{(d)}$")
        ax.plot(supply, w2, gid="supply", color="tab:green", label=r"supply $L_2^{(s)}$")
        ax.plot([eq.L2], [eq.w2], "o", gid="equilibrium", color="black", label="equilibrium")
        ax.set_xlabel(r"$L_2$")
        ax.set_ylabel(r"$w_2$")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_phillips(curve: PhillipsCurve, path: Path) -> Path:
    """Exact curve with the two leading-order approximations."""
    p = curve.params
    L = curve.L_over_L1 * p.L1
    with _figure() as (fig, ax):
        ax.plot(curve.L_over_L1, curve.wbar, "-", gid="exact", color="black", label="exact")
        ax.plot(curve.L_over_L1, wbar_of_L_primary(L, p, order=0), "--",
                gid="small_g", color="tab:blue", label="primary workers dominate")
        ax.plot(curve.L_over_L1, wbar_of_L_secondary(L, p, warn=False), ":",
                gid="large_g", color="tab:red", label="secondary workers dominate")
        top = 1.15 * float(np.max(curve.wbar))
        ax.set_ylim(0, top)
        ax.set_xlabel(r"$L/L_1$")
        ax.set_ylabel(r"$\bar w$")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_wages(curve: PhillipsCurve, path: Path) -> Path:
    with _figure() as (fig, ax):
        ax.plot(curve.L_over_L1, curve.wbar1, "-", color="black", label=r"$\bar w_1$")
        ax.plot(curve.L_over_L1, curve.w2, "--", color="black", label=r"$w_2$")
        ax.set_xlabel(r"$L/L_1$")
        ax.set_ylabel("wage")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_beta_supply(params: ModelParams, betas: Sequence[float], path: Path) -> Path:
    """Secondary supply ``L1 (w2/w0)**beta`` for several beta at fixed w0."""
    w0 = params.w0
    w2 = np.linspace(0.0, 2.0 * w0, 200)
    with _figure() as (fig, ax):
        for beta in betas:
            p = reparametrize_supply(replace(params, beta=beta), w0)
            ax.plot(p.B * w2**beta, w2, label=rf"$\beta={beta:g}$")
        ax.axhline(w0, color="grey", lw=0.8, ls=":")
        ax.set_xlabel(r"$L_2^{(s)}$")
        ax.set_ylabel(r"$w_2$")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_flattening(result: FlatteningResult, path: Path, title: str = "") -> Path:
    with _figure() as (fig, ax):
        ax.plot(result.L_over_L1, result.base.wbar, "-", color="black", label="base")
        ax.plot(result.L_over_L1, result.modified.wbar, "-.", color="tab:orange", label="modified")
        ax.set_xlabel(r"$L/L_1$")
        ax.set_ylabel(r"$\bar w$")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_ratio(lines: Sequence[RatioLine], scenario: RatioScenario, path: Path) -> Path:
    """Lines of ``(gamma_ratio, c_ratio)`` meeting the target, one per ``B_ratio``.

    Larger ``B_ratio`` lines lie lower.
    """
    r = solve_equal_ratio(scenario)
    c_only = solve_single_ratio(scenario, "c")
    with _figure() as (fig, ax):
        for ln in lines:
            ax.plot(ln.gamma_ratio, ln.c_ratio, "-", color="black", lw=1.0)
        c = lines[0].c_ratio
        ax.plot(scenario.target * c * r ** (1.0 / scenario.beta), c, "--", color="tab:blue",
                label=rf"$B_{{ratio}}={r:.5f}$")
        ax.plot([1.0], [c_only], "o", mfc="none", color="black", label="only c changes")
        ax.plot([1.0 / r], [r], "o", color="black", label="equal ratios")
        ax.set_xlabel(r"$\gamma_{ratio}$")
        ax.set_ylabel(r"$c_{ratio}$")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_overlay(curve: Mapping[str, np.ndarray], rows: Sequence[EmpiricalRow],
                 path: Path) -> tuple[Path, int]:
    """Empirical (employment rate, wage growth) scatter over a model curve.

    The bottom axis is the employment rate ``100 - unemployment``; the model
    curve uses its own top/right axes.  Returns the path and marker count.
    """
    with _figure() as (fig, ax):
        model_ax = ax.twinx().twiny()
        model_ax.plot(curve["L_over_L1"], curve["wbar"], "-", gid="model", color="black", label="model")
        model_ax.set_xlabel(r"model $L/L_1$")
        n = len(rows)
        if n:
            x = np.array([r.employment_rate for r in rows])
            y = np.array([r.wage_growth for r in rows])
            ax.scatter(x, y, s=12, gid="data", color="tab:red", label="data")
        ax.set_xlabel("employment rate (%)")
        ax.set_ylabel("wage growth (%)")
        return _save(fig, path), n
