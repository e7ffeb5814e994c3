"""Asymptotic approximations of the equilibrium.

Two regimes:

* small g (insiders dominate, ``L1 >> c L2``): expansion in ``g``;
* large g (secondary workers dominate): expansion in ``u = g**(-1/(1+sigma))``.

Each series is printed to second order only; the error estimates returned
with a :class:`SeriesResult` are the magnitude of the first omitted term,
with a heuristic stand-in where the next coefficient is not known.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from dualphillips.model import ModelParams

__all__ = [
    "RegimeWarning",
    "SeriesResult",
    "g_of_L_primary",
    "g_of_L_secondary",
    "large_g_coefficients",
    "select_regime",
    "small_g_coefficients",
    "v_large_g",
    "v_small_g",
    "wbar_of_L_primary",
    "wbar_of_L_secondary",
]

Regime = Literal["small-g", "large-g"]


class RegimeWarning(UserWarning):
    """An approximation is evaluated outside the regime it was derived for."""


@dataclass(frozen=True)
class SeriesResult:
    value: float
    order: int
    regime: Regime
    est_error: float

    def __post_init__(self):
        if self.order not in (0, 1, 2):
            raise ValueError(f"order must be 0, 1 or 2, got {self.order!r}")
        if not self.est_error >= 0:
            raise ValueError(f"est_error must be >= 0, got {self.est_error!r}")


def _check_order(order: int, highest: int = 2) -> None:
    if order not in range(highest + 1):
        raise ValueError(f"order must be in 0..{highest}, got {order!r}")


def small_g_coefficients(sigma: float) -> tuple[float, float, float]:
    """Coefficients of ``1, g, g**2`` in the small-g expansion of v."""
    return 1.0, -sigma, 0.5 * sigma * (1.0 + 3.0 * sigma)


def large_g_coefficients(sigma: float) -> tuple[float, float, float]:
    """Coefficients of ``1, u, u**2`` in the bracket of the large-g expansion."""
    s1 = 1.0 + sigma
    return 1.0, -sigma / s1, sigma / (2.0 * s1 * s1)


def v_small_g(g: float, sigma: float, order: int = 2, warn: bool = True) -> SeriesResult:
    _check_order(order)
    if g < 0:
        raise ValueError(f"g must be >= 0, got {g!r}")
    if warn and g > 1:
        warnings.warn(f"small-g series evaluated at g={g!r}", RegimeWarning, stacklevel=2)
    coeffs = small_g_coefficients(sigma)
    value = sum(coeffs[k] * g**k for k in range(order + 1))
    if order < 2:
        err = abs(coeffs[order + 1] * g ** (order + 1))
    else:
        # Third-order coefficient unknown; twice the last term times g.
        err = abs(2.0 * coeffs[2] * g**3)
    return SeriesResult(value=value, order=order, regime="small-g", est_error=err)


def v_large_g(g: float, sigma: float, order: int = 2, warn: bool = True) -> SeriesResult:
    _check_order(order)
    if not g > 0:
        raise ValueError(f"g must be > 0, got {g!r}")
    if warn and g < 1:
        warnings.warn(f"large-g series evaluated at g={g!r}", RegimeWarning, stacklevel=2)
    s1 = 1.0 + sigma
    u = g ** (-1.0 / s1)
    coeffs = large_g_coefficients(sigma)
    bracket = sum(coeffs[k] * u**k for k in range(order + 1))
    if order < 2:
        err = abs(coeffs[order + 1] * u ** (order + 1))
    else:
        err = abs(2.0 * coeffs[2] * u**3)
    return SeriesResult(value=g ** (-sigma / s1) * bracket, order=order,
                        regime="large-g", est_error=err)


def select_regime(g: float, sigma: float) -> Regime:
    """Pick the expansion whose order-2 truncation estimate is smaller."""
    if g < 0:
        raise ValueError(f"g must be >= 0, got {g!r}")
    if g == 0:
        return "small-g"
    small = v_small_g(g, sigma, 2, warn=False).est_error
    large = v_large_g(g, sigma, 2, warn=False).est_error
    return "small-g" if small < large else "large-g"


def g_of_L_primary(L_over_L1, c: float, sigma: float, order: int = 1):
    """Small-g inversion ``g = c x + c**2 sigma x**2`` with ``x = L/L1 - 1``."""
    _check_order(order, 1)
    x = np.asarray(L_over_L1, dtype=float) - 1.0
    g = c * x
    if order >= 1:
        g = g + c * c * sigma * x * x
    return g if g.ndim else float(g)


def g_of_L_secondary(L_over_L1, c: float, sigma: float, order: int = 1):
    """Large-g inversion ``g = (c L/L1)**(1+sigma) [1 - (1+sigma-sigma/c) L1/L]``."""
    _check_order(order, 1)
    ratio = np.asarray(L_over_L1, dtype=float)
    g = (c * ratio) ** (1.0 + sigma)
    if order >= 1:
        g = g * (1.0 - (1.0 + sigma - sigma / c) / ratio)
    return g if g.ndim else float(g)


def wbar_of_L_primary(L, params: ModelParams, order: int = 0):
    """Average wage as a function of total employment when insiders dominate.

    ``order=0`` is the leading power law
    ``(gamma/(alpha c)) (L1/B)**(1/beta) x**(1/beta)`` with ``x = L/L1 - 1``;
    ``order=1`` adds the first correction ``(c(alpha+gamma-alpha gamma) - gamma)/gamma * x``.
    Accepts scalars or arrays.
    """
    _check_order(order, 1)
    p = params
    x = np.asarray(L, dtype=float) / p.L1 - 1.0
    if np.any(x <= 0):
        raise ValueError("wbar_of_L_primary needs L > L1 (positive secondary employment)")
    lead = p.gamma / (p.alpha * p.c) * (p.L1 / p.B) ** (1.0 / p.beta) * x ** (1.0 / p.beta)
    if order == 1:
        k1 = (p.c * (p.alpha + p.gamma - p.alpha * p.gamma) - p.gamma) / p.gamma
        lead = lead * (1.0 + k1 * x)
    return lead if lead.ndim else float(lead)


def wbar_of_L_secondary(L, params: ModelParams, warn: bool = True):
    """Leading-order average wage when secondary workers dominate.

    ``wbar = (L/B)**(1/beta) (alpha + gamma - alpha gamma)/alpha``.  The first
    correction is of relative order ``L1/L`` and its coefficient is not
    available, so only the leading term is provided.
    """
    p = params
    L = np.asarray(L, dtype=float)
    if warn and np.any(L / p.L1 < 10.0):
        warnings.warn("wbar_of_L_secondary used with L/L1 < 10; the large-g "
                      "expansion is not accurate there", RegimeWarning, stacklevel=2)
    w = (L / p.B) ** (1.0 / p.beta) * (p.alpha + p.gamma - p.alpha * p.gamma) / p.alpha
    return w if w.ndim else float(w)
