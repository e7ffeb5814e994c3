"""Comparative statics: Phillips curves, flattening experiments, ratio algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Literal, Mapping, Sequence

import numpy as np

from dualphillips.model import (
    Equilibrium,
    ModelParams,
    SolverError,
    aggregate_equilibrium,
    g_for_employment,
    tfp_for_g,
)

__all__ = [
    "CURVE_COLUMNS",
    "CHANGE_KEYS",
    "EquilibriumCheckError",
    "FlatteningResult",
    "PhillipsCurve",
    "RatioLine",
    "RatioScenario",
    "SweepError",
    "apply_changes",
    "flattening_experiment",
    "ratio_constraint",
    "ratio_surface",
    "reparametrize_supply",
    "solve_equal_ratio",
    "solve_single_ratio",
    "sweep_grid",
    "trace_curve",
    "verify_equilibrium",
]

SweepVariable = Literal["g", "A", "L"]

CURVE_COLUMNS = ("L_over_L1", "wbar", "w2", "wbar1", "g", "v", "Z")
CHANGE_KEYS = ("c", "gamma", "beta", "B_percent")

CLEARING_TOL = 1e-10
PROFIT_TOL = 1e-12


class SweepError(SolverError):
    """Solver failure at a particular sweep value."""

    def __init__(self, value: float, cause: SolverError):
        RuntimeError.__init__(self, f"sweep value {value!r}: {cause}")
        self.value = value
        self.bracket = cause.bracket


class EquilibriumCheckError(AssertionError):
    pass


def verify_equilibrium(eq: Equilibrium) -> None:
    """Re-check market clearing and the profit identity of a solved economy."""
    res = eq.market_clearing_residual()
    if not res < CLEARING_TOL:
        raise EquilibriumCheckError(f"market clearing residual {res:.3e} at g={eq.g!r}")
    firms = eq.firms or (eq.representative_firm(),)
    for fe in firms:
        pr = fe.profit_identity_residual(eq.params.gamma)
        if not pr < PROFIT_TOL:
            raise EquilibriumCheckError(f"profit identity residual {pr:.3e} at g={eq.g!r}")


@dataclass(frozen=True)
class PhillipsCurve:
    """Equilibria ordered by total employment.

    Column arrays share one index; ``failures`` lists ``(sweep value,
    message)`` pairs skipped when tracing with ``on_error="skip"``.
    """

    params: ModelParams
    L_over_L1: np.ndarray
    wbar: np.ndarray
    w2: np.ndarray
    wbar1: np.ndarray
    g: np.ndarray
    v: np.ndarray
    Z: np.ndarray
    failures: tuple[tuple[float, str], ...] = field(default=())

    def __len__(self) -> int:
        return len(self.L_over_L1)

    def columns(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in CURVE_COLUMNS}

    @property
    def samples(self) -> list[tuple[float, ...]]:
        return [tuple(float(x) for x in row) for row in zip(*self.columns().values())]

    def slope(self) -> np.ndarray:
        """d wbar / d(L/L1) by central differences (one-sided at the ends)."""
        return _slope(self.L_over_L1, self.wbar)

    @classmethod
    def from_equilibria(cls, params: ModelParams, eqs: Iterable[Equilibrium],
                        failures=()) -> "PhillipsCurve":
        eqs = sorted(eqs, key=lambda e: e.L)
        col = lambda f: np.array([f(e) for e in eqs], dtype=float)  # noqa: E731
        return cls(
            params=params,
            L_over_L1=col(lambda e: e.L_over_L1),
            wbar=col(lambda e: e.wbar),
            w2=col(lambda e: e.w2),
            wbar1=col(lambda e: e.wbar1),
            g=col(lambda e: e.g),
            v=col(lambda e: e.v),
            Z=col(lambda e: e.Z),
            failures=tuple(failures),
        )


def _slope(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if len(x) < 2:
        raise ValueError("slope needs at least two samples")
    return np.gradient(y, x, edge_order=2 if len(x) > 2 else 1)


def sweep_grid(lo: float, hi: float, n: int,
               spacing: Literal["linear", "log"] = "linear") -> np.ndarray:
    if not (lo > 0 and hi > lo):
        raise ValueError(f"need 0 < min < max, got min={lo!r}, max={hi!r}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n!r}")
    if spacing == "log":
        return np.geomspace(lo, hi, n)
    if spacing == "linear":
        return np.linspace(lo, hi, n)
    raise ValueError(f"spacing must be 'linear' or 'log', got {spacing!r}")


def _tfp_for(value: float, params: ModelParams, variable: SweepVariable) -> float:
    if variable == "A":
        return value
    if variable == "g":
        return tfp_for_g(value, params)
    if variable == "L":
        return tfp_for_g(g_for_employment(value, params.c, params.sigma), params)
    raise ValueError(f"sweep variable must be 'g', 'A' or 'L', got {variable!r}")


def equilibrium_at(params: ModelParams, value: float,
                   variable: SweepVariable = "g") -> Equilibrium:
    """Solve with all parameters but TFP held fixed; TFP set by ``value``."""
    eq = aggregate_equilibrium(replace(params, A=_tfp_for(value, params, variable)))
    verify_equilibrium(eq)
    return eq


def trace_curve(params: ModelParams, values: Sequence[float],
                variable: SweepVariable = "g",
                on_error: Literal["raise", "skip"] = "raise") -> PhillipsCurve:
    """Trace ``wbar(L)`` by sweeping TFP through ``g``, ``A`` or ``L/L1`` directly.

    ``params.A`` is ignored; every other parameter is held fixed.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or len(values) == 0:
        raise ValueError("sweep needs at least one value")
    if np.any(values <= 0) or np.any(np.diff(values) <= 0):
        raise ValueError("sweep values must be positive and strictly increasing")
    eqs, failures = [], []
    for value in values:
        try:
            eqs.append(equilibrium_at(params, float(value), variable))
        except (SolverError, EquilibriumCheckError) as exc:
            if on_error == "skip":
                failures.append((float(value), str(exc)))
            elif isinstance(exc, SolverError):
                raise SweepError(float(value), exc) from exc
            else:
                raise
    return PhillipsCurve.from_equilibria(params, eqs, failures)


def reparametrize_supply(params: ModelParams, w0: float) -> ModelParams:
    """Set ``B = L1 / w0**beta`` so that secondary supply reads ``L1 (w2/w0)**beta``."""
    if not w0 > 0:
        raise ValueError(f"w0 must be positive, got {w0!r}")
    return replace(params, B=params.L1 / w0**params.beta)


def apply_changes(base: ModelParams, changes: Mapping[str, float]) -> ModelParams:
    """Apply a set of parameter changes.

    ``c``, ``gamma`` and ``beta`` are new absolute values; ``B_percent`` is a
    percentage increase of ``B``.  ``beta`` is changed at fixed ``w0`` (``B``
    recomputed) before the ``B_percent`` scaling is applied.
    """
    unknown = set(changes) - set(CHANGE_KEYS)
    if unknown:
        raise ValueError(f"unknown parameter change(s): {sorted(unknown)}")
    out = base
    if "c" in changes:
        out = replace(out, c=changes["c"])
    if "gamma" in changes:
        out = replace(out, gamma=changes["gamma"])
    if "beta" in changes:
        w0 = base.w0
        out = reparametrize_supply(replace(out, beta=changes["beta"]), w0)
    if "B_percent" in changes:
        out = replace(out, B=out.B * (1.0 + changes["B_percent"] / 100.0))
    return out


@dataclass(frozen=True)
class FlatteningResult:
    base: PhillipsCurve
    modified: PhillipsCurve
    slope_base: np.ndarray
    slope_modified: np.ndarray

    @property
    def L_over_L1(self) -> np.ndarray:
        return self.base.L_over_L1

    @property
    def slope_ratio(self) -> np.ndarray:
        return self.slope_modified / self.slope_base

    @property
    def level_ratio(self) -> np.ndarray:
        return self.modified.wbar / self.base.wbar


def flattening_experiment(base: ModelParams, changes: Mapping[str, float],
                          L_over_L1: Sequence[float]) -> FlatteningResult:
    """Trace base and modified curves on a shared employment grid."""
    grid = np.asarray(L_over_L1, dtype=float)
    if len(grid) < 2:
        raise ValueError("flattening needs at least two grid points")
    b = trace_curve(base, grid, variable="L")
    m = trace_curve(apply_changes(base, changes), grid, variable="L")
    return FlatteningResult(base=b, modified=m,
                            slope_base=b.slope(), slope_modified=m.slope())


@dataclass(frozen=True)
class RatioScenario:
    """Wage growth in two periods at the same unemployment rate."""

    growth_I: float
    growth_II: float
    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta!r}")
        if not (self.growth_I > -1 and self.growth_II > -1):
            raise ValueError("growth rates must exceed -1")

    @property
    def target(self) -> float:
        return (1.0 + self.growth_II) / (1.0 + self.growth_I)

    def residual(self, c_ratio: float, gamma_ratio: float, B_ratio: float) -> float:
        return ratio_constraint(c_ratio, gamma_ratio, B_ratio, self.beta, self.target)


def ratio_constraint(c_ratio, gamma_ratio, B_ratio, beta: float, target: float = 1.0):
    """``gamma_ratio / (c_ratio * B_ratio**(1/beta)) - target``.

    Zero when changing c, gamma and B by these factors scales the leading
    small-g wage by ``target``.
    """
    for name, r in (("c_ratio", c_ratio), ("gamma_ratio", gamma_ratio), ("B_ratio", B_ratio)):
        if np.any(np.asarray(r) <= 0):
            raise ValueError(f"{name} must be positive")
    return gamma_ratio / (c_ratio * B_ratio ** (1.0 / beta)) - target


def solve_equal_ratio(scenario: RatioScenario) -> float:
    """Common factor r with ``c_ratio = B_ratio = 1/gamma_ratio = r``."""
    t = scenario.target
    if not 0 < t < 1:
        raise ValueError(f"target must lie in (0, 1), got {t!r}")
    return t ** (-1.0 / (2.0 + 1.0 / scenario.beta))


def solve_single_ratio(scenario: RatioScenario, which: Literal["c", "gamma", "B"]) -> float:
    """Ratio of one parameter that alone meets the target (others unchanged)."""
    t = scenario.target
    if which == "c":
        return 1.0 / t
    if which == "gamma":
        return t
    if which == "B":
        return t ** (-scenario.beta)
    raise ValueError(f"which must be 'c', 'gamma' or 'B', got {which!r}")


@dataclass(frozen=True)
class RatioLine:
    B_ratio: float
    c_ratio: np.ndarray
    gamma_ratio: np.ndarray


def ratio_surface(scenario: RatioScenario, B_ratio_grid: Sequence[float],
                  c_ratio_grid: Sequence[float] | None = None) -> list[RatioLine]:
    """For each ``B_ratio``, the line of ``(c_ratio, gamma_ratio)`` meeting the target."""
    if c_ratio_grid is None:
        c_ratio_grid = np.linspace(1.0, math.ceil(solve_single_ratio(scenario, "c") * 100) / 100, 51)
    c = np.asarray(c_ratio_grid, dtype=float)
    lines = []
    for b in B_ratio_grid:
        if not b > 0:
            raise ValueError(f"B_ratio must be positive, got {b!r}")
        gam = scenario.target * c * b ** (1.0 / scenario.beta)
        lines.append(RatioLine(B_ratio=float(b), c_ratio=c.copy(), gamma_ratio=gam))
    return lines
