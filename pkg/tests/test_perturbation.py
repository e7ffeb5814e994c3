import warnings
from dataclasses import replace

import numpy as np
import pytest
import sympy as sp

from dualphillips.model import solve_v
from dualphillips.perturbation import (
    RegimeWarning,
    SeriesResult,
    g_of_L_primary,
    g_of_L_secondary,
    large_g_coefficients,
    select_regime,
    small_g_coefficients,
    v_large_g,
    v_small_g,
    wbar_of_L_primary,
    wbar_of_L_secondary,
)
from dualphillips.statics import trace_curve
from oracles import bisect_v

EPS = np.finfo(float).eps

# Frozen regression bounds, fitted against bisection for sigma = 0.25:
# max |v2 - v|/g**3 on [1e-4, 1e-2] is 0.24997; large-g constant is 0.0320.
SMALL_G_C = 0.26
LARGE_G_C = 0.035


def test_series_result_validates():
    with pytest.raises(ValueError):
        SeriesResult(1.0, 3, "small-g", 0.0)
    with pytest.raises(ValueError):
        SeriesResult(1.0, 1, "small-g", -1.0)


@pytest.mark.parametrize("order", [0, 1, 2])
def test_small_g_at_zero(order):
    assert v_small_g(0.0, 0.3, order).value == 1.0


def test_small_g_hand_value():
    res = v_small_g(0.01, 0.25, 2)
    assert res.value == pytest.approx(1 - 0.0025 + 0.5 * 0.25 * 1.75 * 1e-4, rel=1e-15)
    assert res.value == pytest.approx(0.99752188, abs=5e-9)
    assert res.est_error == pytest.approx(0.25 * 1.75 * 1e-6, rel=1e-12)
    assert res.regime == "small-g"


def test_small_g_cubic_convergence():
    gs = np.geomspace(1e-4, 1e-2, 25)
    err = np.array([abs(v_small_g(g, 0.25).value - bisect_v(g, 0.25)) for g in gs])
    assert np.all(err <= SMALL_G_C * gs**3 + 4 * EPS)
    # Log-log slope of the error is 3.
    big = gs > 1e-3
    slope = np.polyfit(np.log(gs[big]), np.log(err[big]), 1)[0]
    assert slope == pytest.approx(3.0, abs=0.05)


def test_large_g_leading_term():
    res = v_large_g(1e6, 0.25, 0)
    assert res.value == pytest.approx(10 ** -1.2, rel=1e-14)
    assert res.value == pytest.approx(0.063096, abs=1e-6)


def test_large_g_order2_accuracy():
    res = v_large_g(1e6, 0.25, 2)
    exact = bisect_v(1e6, 0.25)
    assert abs(res.value - exact) / exact < 1e-4


def test_large_g_error_decreases():
    errs = [abs(v_large_g(g, 0.25, 1).value / bisect_v(g, 0.25) - 1) for g in (1e3, 1e4, 1e5, 1e6)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_large_g_bound():
    s = 0.25
    for g in (1e4, 1e5, 1e6, 1e7):
        exact = bisect_v(g, s)
        bound = LARGE_G_C * g ** (-3 / (1 + s)) * g ** (-s / (1 + s)) + 4 * EPS * exact
        assert abs(v_large_g(g, s).value - exact) <= bound


def test_large_g_sigma_to_zero():
    assert v_large_g(1e6, 1e-12, 0).value == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("sigma", [0.1, 0.25, 0.9])
def test_order_monotonicity(sigma):
    for g in np.geomspace(1e-3, 0.1, 10):
        exact = solve_v(g, sigma)
        e = [abs(v_small_g(g, sigma, k).value - exact) for k in (0, 1, 2)]
        assert e[2] <= e[1] <= e[0]
    for g in np.geomspace(1e3, 1e6, 10):
        exact = solve_v(g, sigma)
        e = [abs(v_large_g(g, sigma, k).value - exact) for k in (0, 1, 2)]
        assert e[2] <= e[1] + 4 * EPS * exact and e[1] <= e[0]


def test_regime_warnings():
    with pytest.warns(RegimeWarning):
        v_small_g(5.0, 0.25)
    with pytest.warns(RegimeWarning):
        v_large_g(0.1, 0.25)


# --- symbolic and numeric confirmation of the printed coefficients -------

def _symbolic_small_g():
    g, s, a1, a2 = sp.symbols("g sigma a1 a2")
    v = 1 + a1 * g + a2 * g**2
    expr = sp.series(sp.log(v) + s * sp.log(1 + g * v), g, 0, 3).removeO()
    sol = sp.solve([expr.coeff(g, 1), expr.coeff(g, 2)], [a1, a2], dict=True)[0]
    return s, sol[a1], sol[a2]


def _symbolic_large_g():
    # v = g**(-s/(1+s)) y(u), u = g**(-1/(1+s)) turns the equation into
    # y**(1+s) = (1 + u/y)**(-s).
    u, s, b1, b2 = sp.symbols("u sigma b1 b2")
    y = 1 + b1 * u + b2 * u**2
    expr = sp.series((1 + s) * sp.log(y) + s * sp.log(1 + u / y), u, 0, 3).removeO()
    sol = sp.solve([expr.coeff(u, 1), expr.coeff(u, 2)], [b1, b2], dict=True)[0]
    return s, sol[b1], sol[b2]


@pytest.mark.parametrize("sigma", [sp.Rational(1, 4), sp.Rational(1, 3), sp.Integer(2)])
def test_small_g_coefficients_symbolic(sigma):
    s, a1, a2 = _symbolic_small_g()
    expect = small_g_coefficients(float(sigma))
    assert float(a1.subs(s, sigma)) == pytest.approx(expect[1], rel=1e-15)
    assert float(a2.subs(s, sigma)) == pytest.approx(expect[2], rel=1e-15)
    assert sp.simplify(a2 - s * (1 + 3 * s) / 2) == 0


@pytest.mark.parametrize("sigma", [sp.Rational(1, 4), sp.Rational(3, 5)])
def test_large_g_coefficients_symbolic(sigma):
    s, b1, b2 = _symbolic_large_g()
    expect = large_g_coefficients(float(sigma))
    assert float(b1.subs(s, sigma)) == pytest.approx(expect[1], rel=1e-15)
    assert float(b2.subs(s, sigma)) == pytest.approx(expect[2], rel=1e-15)
    assert sp.simplify(b2 - s / (2 * (1 + s) ** 2)) == 0


def test_small_g_coefficients_numeric_fit():
    s = 0.25
    gs = np.geomspace(1e-4, 1e-3, 12)
    q = np.array([(bisect_v(g, s) - 1) / g for g in gs])
    slope, intercept = np.polyfit(gs, q, 1)
    assert intercept == pytest.approx(-s, rel=1e-5)
    assert slope == pytest.approx(0.5 * s * (1 + 3 * s), rel=2e-3)


def test_large_g_coefficients_numeric_fit():
    s = 0.25
    gs = np.geomspace(1e4, 1e6, 12)
    u = gs ** (-1 / (1 + s))
    y = np.array([bisect_v(g, s) for g in gs]) * gs ** (s / (1 + s))
    c2, c1, c0 = np.polyfit(u, y, 2)
    assert c0 == pytest.approx(1.0, abs=1e-12)
    assert c1 == pytest.approx(-s / (1 + s), rel=1e-6)
    assert c2 == pytest.approx(s / (2 * (1 + s) ** 2), rel=2e-2)


# --- regime selection ----------------------------------------------------

def test_select_regime_extremes():
    assert select_regime(1e-3, 0.25) == "small-g"
    assert select_regime(1e6, 0.25) == "large-g"
    assert select_regime(0.0, 0.25) == "small-g"


def test_unique_crossover():
    gs = np.geomspace(1e-4, 1e8, 2000)
    regimes = [select_regime(g, 0.25) for g in gs]
    switches = sum(a != b for a, b in zip(regimes, regimes[1:]))
    assert switches == 1
    assert regimes[0] == "small-g" and regimes[-1] == "large-g"


# --- Phillips approximations ----------------------------------------------

def test_primary_prefactor(fig3_params):
    # gamma/(alpha c) = 2 and (L1/B)**(1/beta) = 1, so wbar = 2 x**2 at leading order.
    x = 0.1
    assert wbar_of_L_primary(1 + x, fig3_params) == pytest.approx(2 * x**2, rel=1e-14)


def test_primary_vanishes_at_L1(fig3_params):
    assert wbar_of_L_primary(1 + 1e-9, fig3_params) < 1e-17
    with pytest.raises(ValueError):
        wbar_of_L_primary(1.0, fig3_params)


def test_primary_inversion(fig3_params):
    p = fig3_params
    for x in (1e-3, 1e-2):
        g_exact = p.c * x * (1 + p.c * x) ** p.sigma
        # Next term of the exact inverse is sigma (sigma - 1)/2 (c x)**3.
        assert abs(g_of_L_primary(1 + x, p.c, p.sigma) - g_exact) < 0.1 * (p.c * x) ** 3


def test_primary_approximation_on_fig3_range(fig3_params):
    grid = 1 + np.arange(1, 101) / 200.0  # L/L1 in (1, 1.5]
    exact = trace_curve(fig3_params, grid, variable="L").wbar
    dev0 = np.max(np.abs(wbar_of_L_primary(grid, fig3_params, 0) / exact - 1))
    dev1 = np.max(np.abs(wbar_of_L_primary(grid, fig3_params, 1) / exact - 1))
    # Leading term: 1/19 off at L/L1 = 1.25 and 1/11 off at 1.5; under 5% up to 1.2.
    near = grid <= 1.2
    assert np.max(np.abs(wbar_of_L_primary(grid[near], fig3_params, 0) / exact[near] - 1)) < 0.05
    assert dev0 < 0.1
    assert dev1 < 0.05
    assert dev1 < dev0


def test_primary_increasing(fig3_params):
    L = np.linspace(1.001, 1.5, 300)
    for order in (0, 1):
        assert np.all(np.diff(wbar_of_L_primary(L, fig3_params, order)) > 0)


def test_secondary_coefficient(fig3_params):
    p = replace(fig3_params, B=1.0)
    assert wbar_of_L_secondary(20.0, p) == pytest.approx(20.0**2 * 1.5, rel=1e-14)


def test_secondary_B_scaling(fig3_params):
    w1 = wbar_of_L_secondary(50.0, fig3_params)
    w2 = wbar_of_L_secondary(50.0, replace(fig3_params, B=2.0))
    assert w1 / w2 == pytest.approx(4.0, rel=1e-14)


def test_secondary_warns_outside_domain(fig3_params):
    with pytest.warns(RegimeWarning):
        wbar_of_L_secondary(2.0, fig3_params)


def test_secondary_worse_than_primary_on_fig3_range(fig3_params, fig3_grid):
    exact = trace_curve(fig3_params, fig3_grid, variable="L").wbar
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        sec = np.abs(wbar_of_L_secondary(fig3_grid, fig3_params) / exact - 1)
    prim = np.abs(wbar_of_L_primary(fig3_grid, fig3_params, 0) / exact - 1)
    assert np.all(sec > prim)


def test_secondary_accurate_for_large_L(fig3_params):
    L = np.array([50.0, 200.0, 1000.0])
    exact = trace_curve(fig3_params, L, variable="L").wbar
    dev = np.abs(wbar_of_L_secondary(L, fig3_params) / exact - 1)
    assert np.all(np.diff(dev) < 0)
    assert dev[-1] < 5e-3


def test_secondary_inversion_large_L(fig3_params):
    p = fig3_params
    for ratio in (1e3, 1e4):
        g_exact = p.c * (ratio - 1) * (1 + p.c * (ratio - 1)) ** p.sigma
        assert g_of_L_secondary(ratio, p.c, p.sigma) == pytest.approx(g_exact, rel=10 / ratio**2)
