"""Exact equilibrium of the dual labor market.

Firm j produces ``Y_j = A_j (L1_j + c L2_j)**alpha``.  It first picks the
number of secondary workers at the market wage ``w2`` and then splits the
remaining surplus with its insiders by Nash bargaining.  Secondary labor is
supplied as ``L2 = B w2**beta``.

Market clearing collapses to the dimensionless scalar equation

    v = (1 + g v) ** (-sigma),    sigma = beta (1 - alpha)

with ``g = c B (alpha c A)**beta L1**(-1 - sigma)`` and ``v`` a scaled
secondary wage.  Everything else follows in closed form from ``(g, v)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

__all__ = [
    "CornerSolutionWarning",
    "Equilibrium",
    "FirmEquilibrium",
    "FirmRecord",
    "InvalidParameterError",
    "ModelParams",
    "ScaledState",
    "SolverError",
    "aggregate_demand_l2",
    "aggregate_equilibrium",
    "aggregate_tfp",
    "compute_g",
    "firm_demand_l2",
    "firm_equilibrium",
    "g_for_employment",
    "solve_v",
    "solve_v_bisection",
    "tfp_for_g",
    "total_earnings",
    "total_employment",
    "w2_from_v",
    "z_function",
]

V_FLOOR = 1e-300
DEFAULT_RTOL = 1e-13
DEFAULT_MAX_ITER = 200
NEWTON_SWITCH = 1e-6


class InvalidParameterError(ValueError):
    """A model parameter violates its admissible range."""

    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.name = name


class SolverError(RuntimeError):
    """The root finder did not converge; ``bracket`` is the last (lo, hi)."""

    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"{message} (last bracket [{bracket[0]!r}, {bracket[1]!r}])")
        self.bracket = bracket


class CornerSolutionWarning(UserWarning):
    """A firm's interior demand for secondary workers is negative."""


def _require(name: str, value: float, ok: bool, rule: str) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise InvalidParameterError(name, f"must be a finite number, got {value!r}")
    if not ok:
        raise InvalidParameterError(name, f"must satisfy {rule}, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """The seven free parameters of the model.

    ``B`` carries dimension H**(1+beta) V**(-beta) T**beta and ``A`` carries
    H**(-alpha) V T**(-1); the rest are dimensionless except ``L1``
    (headcount).
    """

    alpha: float
    c: float
    beta: float
    gamma: float
    L1: float
    B: float
    A: float = 1.0

    def __post_init__(self) -> None:
        _require("alpha", self.alpha, 0 < self.alpha < 1, "0 < alpha < 1")
        _require("c", self.c, 0 < self.c <= 1, "0 < c <= 1")
        _require("beta", self.beta, self.beta > 0, "beta > 0")
        _require("gamma", self.gamma, 0 < self.gamma < 1, "0 < gamma < 1")
        _require("L1", self.L1, self.L1 > 0, "L1 > 0")
        _require("B", self.B, self.B > 0, "B > 0")
        _require("A", self.A, self.A > 0, "A > 0")

    @property
    def sigma(self) -> float:
        return self.beta * (1.0 - self.alpha)

    @property
    def w0(self) -> float:
        """Wage at which secondary supply equals ``L1`` (``B = L1 / w0**beta``)."""
        return (self.L1 / self.B) ** (1.0 / self.beta)

    @classmethod
    def from_w0(cls, alpha, c, beta, gamma, L1, w0, A=1.0) -> "ModelParams":
        _require("w0", w0, w0 > 0, "w0 > 0")
        return cls(alpha=alpha, c=c, beta=beta, gamma=gamma, L1=L1, B=L1 / w0**beta, A=A)


@dataclass(frozen=True)
class FirmRecord:
    A_j: float
    L1_j: float

    def __post_init__(self) -> None:
        _require("A_j", self.A_j, self.A_j > 0, "A_j > 0")
        _require("L1_j", self.L1_j, self.L1_j > 0, "L1_j > 0")


@dataclass(frozen=True)
class FirmEquilibrium:
    """Optimum of a single firm at a given secondary wage."""

    firm: FirmRecord
    w2: float
    L2_j: float
    Y_j: float
    w1_j: float
    Pi_j: float

    @property
    def corner(self) -> bool:
        """True when the interior demand is negative (constraint L2_j >= 0 ignored)."""
        return self.L2_j < 0

    def profit_identity_residual(self, gamma: float) -> float:
        """Relative gap between Pi_j and ((1-gamma)/gamma) L1_j w1_j."""
        expected = (1.0 - gamma) / gamma * self.firm.L1_j * self.w1_j
        return abs(self.Pi_j - expected) / max(abs(expected), abs(self.Pi_j), 1e-300)


@dataclass(frozen=True)
class ScaledState:
    g: float
    v: float
    sigma: float

    @property
    def residual(self) -> float:
        return self.v - (1.0 + self.g * self.v) ** (-self.sigma)


def aggregate_tfp(firms: Sequence[FirmRecord], alpha: float) -> float:
    """Combine firm TFPs as ``(sum A_j**(1/(1-alpha)))**(1-alpha)``."""
    if len(firms) == 0:
        raise ValueError("aggregate_tfp needs at least one firm")
    _require("alpha", alpha, 0 < alpha < 1, "0 < alpha < 1")
    p = 1.0 / (1.0 - alpha)
    # Factor out the largest term to avoid overflow for big exponents.
    top = max(f.A_j for f in firms)
    total = math.fsum((f.A_j / top) ** p for f in firms)
    return top * total ** (1.0 - alpha)


def compute_g(params: ModelParams) -> float:
    p = params
    return p.c * p.B * (p.alpha * p.c * p.A) ** p.beta * p.L1 ** (-1.0 - p.sigma)


def tfp_for_g(g: float, params: ModelParams) -> float:
    """Aggregate TFP that produces the dimensionless parameter ``g``."""
    p = params
    if not g > 0:
        raise ValueError(f"g must be positive, got {g!r}")
    return (g * p.L1 ** (1.0 + p.sigma) / (p.c * p.B)) ** (1.0 / p.beta) / (p.alpha * p.c)


def g_for_employment(L_over_L1: float, c: float, sigma: float) -> float:
    """Exact inverse of ``L/L1 = 1 + (g/c) v(g)``.

    With ``x = L/L1 - 1`` we have ``g v = c x`` and hence
    ``v = (1 + c x)**(-sigma)``, so ``g = c x (1 + c x)**sigma``.
    """
    x = L_over_L1 - 1.0
    if not x > 0:
        raise ValueError(f"L/L1 must exceed 1, got {L_over_L1!r}")
    return c * x * (1.0 + c * x) ** sigma


def _residual(v: float, g: float, sigma: float) -> float:
    return v - (1.0 + g * v) ** (-sigma)


def _check_solver_inputs(g: float, sigma: float) -> None:
    if not (math.isfinite(g) and g >= 0):
        raise ValueError(f"g must be finite and >= 0, got {g!r}")
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be finite and > 0, got {sigma!r}")


def _initial_bracket(g: float, sigma: float) -> tuple[float, float]:
    # v <= 1 implies v >= (1+g)**(-sigma); both ends bracket the root.
    lo = max(V_FLOOR, (1.0 + g) ** (-sigma))
    hi = 1.0
    r_lo, r_hi = _residual(lo, g, sigma), _residual(hi, g, sigma)
    if not (r_lo <= 0.0 < r_hi):
        raise SolverError("root not bracketed", (lo, hi))
    return lo, hi


def solve_v(g: float, sigma: float, rtol: float = DEFAULT_RTOL,
            max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Solve ``v = (1 + g v)**(-sigma)`` for the unique root in (0, 1].

    Bisection narrows the bracket to a relative width of 1e-6, then a
    safeguarded Newton iteration finishes; any Newton step that leaves the
    bracket is replaced by a bisection step.  Converged when
    ``|residual| <= rtol * v``.
    """
    _check_solver_inputs(g, sigma)
    if g == 0:
        return 1.0
    lo, hi = _initial_bracket(g, sigma)
    if _residual(lo, g, sigma) == 0.0:
        return lo

    it = 0
    while hi - lo > NEWTON_SWITCH * hi:
        if it >= max_iter:
            raise SolverError("bisection did not converge", (lo, hi))
        mid = 0.5 * (lo + hi)
        if _residual(mid, g, sigma) > 0:
            hi = mid
        else:
            lo = mid
        it += 1

    v = 0.5 * (lo + hi)
    while it < max_iter:
        base = 1.0 + g * v
        r = v - base ** (-sigma)
        if abs(r) <= rtol * v:
            return v
        if r > 0:
            hi = v
        else:
            lo = v
        step = r / (1.0 + sigma * g * base ** (-sigma - 1.0))
        nxt = v - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if nxt == v:
            # Step below one ulp: the residual is at rounding level.
            return v
        v = nxt
        it += 1
    raise SolverError("Newton iteration did not converge", (lo, hi))


def solve_v_bisection(g: float, sigma: float, xtol: float = 1e-15,
                      max_iter: int = 2000) -> float:
    """Pure bisection on the same equation; kept as an independent reference."""
    _check_solver_inputs(g, sigma)
    if g == 0:
        return 1.0
    lo, hi = V_FLOOR, 1.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= xtol * mid:
            return mid
        if _residual(mid, g, sigma) > 0:
            hi = mid
        else:
            lo = mid
    raise SolverError("bisection did not converge", (lo, hi))


def w2_from_v(v: float, params: ModelParams) -> float:
    p = params
    if not 0 < v <= 1:
        raise ValueError(f"v must lie in (0, 1], got {v!r}")
    return p.alpha * p.c * p.A / p.L1 ** (1.0 - p.alpha) * v ** (1.0 / p.beta)


def aggregate_demand_l2(w2: float, params: ModelParams) -> float:
    """Economy-wide secondary labor demand at wage ``w2`` (aggregate TFP ``A``)."""
    p = params
    return (-p.L1 + (p.alpha * p.c * p.A / w2) ** (1.0 / (1.0 - p.alpha))) / p.c


def firm_demand_l2(firm: FirmRecord, w2: float, alpha: float, c: float,
                   warn: bool = True) -> float:
    """Interior first-stage demand of one firm; may be negative."""
    if not w2 > 0:
        raise ValueError(f"w2 must be positive, got {w2!r}")
    l2 = (-firm.L1_j + (alpha * c * firm.A_j / w2) ** (1.0 / (1.0 - alpha))) / c
    if l2 < 0 and warn:
        warnings.warn(
            f"firm with A_j={firm.A_j!r}, L1_j={firm.L1_j!r} has negative "
            f"secondary demand {l2!r} at w2={w2!r}",
            CornerSolutionWarning,
            stacklevel=2,
        )
    return l2


def firm_equilibrium(firm: FirmRecord, w2: float, params: ModelParams,
                     warn: bool = True) -> FirmEquilibrium:
    a, c, gamma = params.alpha, params.c, params.gamma
    l2 = firm_demand_l2(firm, w2, a, c, warn=warn)
    y = firm.A_j * (a * c * firm.A_j / w2) ** (a / (1.0 - a))
    w1 = gamma * (y - l2 * w2) / firm.L1_j
    profit = y - firm.L1_j * w1 - l2 * w2
    return FirmEquilibrium(firm=firm, w2=w2, L2_j=l2, Y_j=y, w1_j=w1, Pi_j=profit)


def total_employment(g: float, v: float, params: ModelParams) -> float:
    return params.L1 * (1.0 + g / params.c * v)


def total_earnings(g: float, v: float, params: ModelParams) -> float:
    p = params
    pref = g ** (1.0 / p.beta) * p.L1 ** (1.0 + 1.0 / p.beta) / (
        p.alpha * p.c * (p.c * p.B) ** (1.0 / p.beta))
    return pref * _bargaining_bracket(p.alpha, p.beta, p.gamma, g, v)


def _bargaining_bracket(alpha, beta, gamma, g, v):
    return (gamma * v ** (-alpha / (beta * (1.0 - alpha)))
            + (1.0 - gamma) * alpha * g * v ** (1.0 + 1.0 / beta))


def z_function(alpha: float, c: float, beta: float, gamma: float,
               g: float, v: float) -> float:
    """Dimensionless wage factor: ``wbar = (L1/B)**(1/beta) * Z``.

    Vanishes at ``g = 0`` (no secondary employment).
    """
    if g == 0:
        return 0.0
    return (g ** (1.0 / beta) / (alpha * c ** (1.0 + 1.0 / beta))
            * _bargaining_bracket(alpha, beta, gamma, g, v) / (1.0 + g / c * v))


@dataclass(frozen=True)
class Equilibrium:
    params: ModelParams
    g: float
    v: float
    w2: float
    L2: float
    L: float
    W: float
    wbar: float
    wbar1: float
    Z: float
    firms: tuple[FirmEquilibrium, ...] = field(default=())

    @property
    def L_over_L1(self) -> float:
        return self.L / self.params.L1

    @property
    def state(self) -> ScaledState:
        return ScaledState(self.g, self.v, self.params.sigma)

    @property
    def wbar_via_z(self) -> float:
        p = self.params
        return (p.L1 / p.B) ** (1.0 / p.beta) * self.Z

    def market_clearing_residual(self) -> float:
        """``|L2_supply - L2_demand| / L2_supply`` at the solved wage."""
        demand = aggregate_demand_l2(self.w2, self.params)
        return abs(self.L2 - demand) / self.L2 if self.L2 > 0 else abs(demand)

    def representative_firm(self) -> FirmEquilibrium:
        """One firm holding the aggregate TFP and all insiders."""
        p = self.params
        return firm_equilibrium(FirmRecord(p.A, p.L1), self.w2, p)


def aggregate_equilibrium(params: ModelParams,
                          firms: Sequence[FirmRecord] | None = None,
                          rtol: float = DEFAULT_RTOL) -> Equilibrium:
    """Solve the economy for aggregate TFP ``params.A``.

    When ``firms`` is given, their TFPs must aggregate to ``params.A`` and
    their insiders must sum to ``params.L1``; the primary average wage is
    then summed firm by firm instead of using the closed aggregate form.
    """
    p = params
    g = compute_g(p)
    v = solve_v(g, p.sigma, rtol=rtol)
    w2 = w2_from_v(v, p)
    l2 = p.B * w2**p.beta
    L = total_employment(g, v, p)
    W = total_earnings(g, v, p)
    z = z_function(p.alpha, p.c, p.beta, p.gamma, g, v)

    firm_eqs: tuple[FirmEquilibrium, ...] = ()
    if firms:
        a_agg = aggregate_tfp(firms, p.alpha)
        l1_sum = math.fsum(f.L1_j for f in firms)
        if abs(a_agg - p.A) > 1e-12 * p.A:
            raise ValueError(f"firm TFPs aggregate to {a_agg!r}, params.A is {p.A!r}")
        if abs(l1_sum - p.L1) > 1e-12 * p.L1:
            raise ValueError(f"firm insiders sum to {l1_sum!r}, params.L1 is {p.L1!r}")
        firm_eqs = tuple(firm_equilibrium(f, w2, p) for f in firms)
        wbar1 = math.fsum(fe.firm.L1_j * fe.w1_j for fe in firm_eqs) / p.L1
    else:
        y = p.A * (p.alpha * p.c * p.A / w2) ** (p.alpha / (1.0 - p.alpha))
        wbar1 = p.gamma * (y - l2 * w2) / p.L1

    return Equilibrium(params=p, g=g, v=v, w2=w2, L2=l2, L=L, W=W,
                       wbar=W / L, wbar1=wbar1, Z=z, firms=firm_eqs)
