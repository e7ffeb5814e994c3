"""Dimensions of the model's quantities in headcount (H), value (V), time (T).

The exponents of ``A`` and ``B`` depend on ``alpha`` and ``beta``.  They are
kept as exact :class:`fractions.Fraction` values; a float parameter is read
through its shortest decimal representation, which is always rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Rational

from dualphillips.model import ModelParams

__all__ = [
    "DIMENSIONLESS",
    "Dimension",
    "SYMBOLS",
    "UnitRescaling",
    "UnknownSymbolError",
    "apply_rescaling",
    "dim_of",
    "scale_factor",
]


class UnknownSymbolError(KeyError):
    pass


def _exact(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(repr(float(x)))


@dataclass(frozen=True)
class Dimension:
    h: Fraction = Fraction(0)
    v: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("h", "v", "t"):
            object.__setattr__(self, name, _exact(getattr(self, name)))

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(self.h + other.h, self.v + other.v, self.t + other.t)

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(self.h - other.h, self.v - other.v, self.t - other.t)

    def __pow__(self, k) -> "Dimension":
        k = _exact(k)
        return Dimension(self.h * k, self.v * k, self.t * k)

    @property
    def dimensionless(self) -> bool:
        return self.h == 0 and self.v == 0 and self.t == 0

    def __str__(self) -> str:
        parts = [f"{b}^{e}" for b, e in (("H", self.h), ("V", self.v), ("T", self.t)) if e != 0]
        return " ".join(parts) or "1"


DIMENSIONLESS = Dimension()
H = Dimension(h=1)
V = Dimension(v=1)
T = Dimension(t=1)

WAGE = V / H / T
FLOW = V / T

SYMBOLS = ("Y", "L", "L1", "L2", "w1", "w2", "wbar", "wbar1", "w0", "A", "B", "W",
           "Pi", "g", "v", "Z", "alpha", "beta", "gamma", "c")


def dim_of(symbol: str, params: ModelParams | None = None) -> Dimension:
    """Dimension of a model symbol; ``A`` and ``B`` need ``params``."""
    if symbol in ("Y", "W", "Pi"):
        return FLOW
    if symbol in ("L", "L1", "L2"):
        return H
    if symbol in ("w1", "w2", "wbar", "wbar1", "w0"):
        return WAGE
    if symbol in ("g", "v", "Z", "alpha", "beta", "gamma", "c"):
        return DIMENSIONLESS
    if symbol in ("A", "B"):
        if params is None:
            raise ValueError(f"dimension of {symbol} depends on the parameters")
        if symbol == "A":
            return H ** (-_exact(params.alpha)) * V / T
        beta = _exact(params.beta)
        return H ** (1 + beta) * V ** (-beta) * T**beta
    raise UnknownSymbolError(symbol)


@dataclass(frozen=True)
class UnitRescaling:
    """New unit = old unit / lambda, so a quantity of dimension H^h V^v T^t
    gets multiplied by ``lambda_h**h * lambda_v**v * lambda_t**t``."""

    lambda_h: float = 1.0
    lambda_v: float = 1.0
    lambda_t: float = 1.0

    def __post_init__(self):
        for name in ("lambda_h", "lambda_v", "lambda_t"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be a positive finite number, got {val!r}")


def scale_factor(dim: Dimension, r: UnitRescaling) -> float:
    return r.lambda_h ** float(dim.h) * r.lambda_v ** float(dim.v) * r.lambda_t ** float(dim.t)


def apply_rescaling(params: ModelParams, r: UnitRescaling) -> ModelParams:
    """Express the parameters in rescaled units."""
    return replace(
        params,
        A=params.A * scale_factor(dim_of("A", params), r),
        B=params.B * scale_factor(dim_of("B", params), r),
        L1=params.L1 * scale_factor(dim_of("L1"), r),
    )
