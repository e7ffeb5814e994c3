import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualphillips.config import (
    ConfigError,
    load_config,
    parse_config,
    preset_names,
    preset_path,
)
from dualphillips.fileio import (
    EmpiricalDataError,
    format_float,
    read_columns,
    read_curve_csv,
    read_empirical,
    write_columns,
    write_curve_csv,
)
from dualphillips.statics import CURVE_COLUMNS, trace_curve

BASE = """
[params]
alpha = 0.5
c = 0.5
beta = 0.5
gamma = 0.5
L1 = 1.0
B = 1.0
"""


# --- float formatting --------------------------------------------------------

def test_format_short_values_untouched():
    assert format_float(0.1, 12) == "0.1"
    assert format_float(2.5e-05, 6) == "2.5e-05"
    assert format_float(-3.0, 6) == "-3.0"


def test_format_caps_digits():
    assert format_float(1 / 3, 6) == "0.333333"
    assert format_float(2 / 3, 12) == "0.666666666667"
    assert format_float(math.pi, 17) == repr(math.pi)


@given(st.floats(allow_nan=False, allow_infinity=False), st.integers(6, 17))
def test_format_round_trip(x, precision):
    back = float(format_float(x, precision))
    if x == 0:
        assert back == 0
    else:
        assert abs(back - x) <= abs(x) * 10.0 ** (1 - precision)
    if precision == 17:
        assert back == x


# --- CSV ---------------------------------------------------------------------

def test_curve_csv_round_trip(tmp_path, fig3_params):
    curve = trace_curve(fig3_params, np.linspace(1.01, 1.9, 17), variable="L")
    path = write_curve_csv(tmp_path / "c.csv", curve, 12)
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    assert raw.splitlines()[0].decode() == ",".join(CURVE_COLUMNS)
    back = read_curve_csv(path)
    for name, col in curve.columns().items():
        np.testing.assert_allclose(back[name], col, rtol=1e-11)


def test_full_precision_round_trip_is_exact(tmp_path, rng):
    cols = {"a": rng.normal(size=50), "b": rng.lognormal(size=50)}
    back = read_columns(write_columns(tmp_path / "x.csv", cols, 17))
    for k in cols:
        np.testing.assert_array_equal(back[k], cols[k])


def test_ragged_columns_rejected(tmp_path):
    with pytest.raises(ValueError):
        write_columns(tmp_path / "x.csv", {"a": [1.0], "b": [1.0, 2.0]}, 12)


def test_curve_csv_missing_column(tmp_path):
    write_columns(tmp_path / "x.csv", {"L_over_L1": [1.1]}, 12)
    with pytest.raises(ValueError):
        read_curve_csv(tmp_path / "x.csv")


# --- empirical input ------------------------------------------------------

def _emp(tmp_path, text):
    p = tmp_path / "emp.csv"
    p.write_text(text, encoding="utf-8")
    return p


def test_empirical_employment_rate(tmp_path):
    rows = read_empirical(_emp(tmp_path, "period,unemployment_rate,wage_growth\n1990Q1,2.5,3.1\n"))
    assert len(rows) == 1
    assert rows[0].employment_rate == 97.5
    assert rows[0].period == "1990Q1"


def test_empirical_empty_file(tmp_path):
    assert read_empirical(_emp(tmp_path, "")) == []
    assert read_empirical(_emp(tmp_path, "period,unemployment_rate,wage_growth\n")) == []


@pytest.mark.parametrize("body, row", [
    ("a,2.0,1.0\nb,oops,1.0\n", 3),
    ("a,2.0,1.0\nb,100.0,1.0\n", 3),
    ("a,0,1.0\n", 2),
    ("a,2.0,1.0\nb,3.0,1.0\nc,3.0\n", 4),
    ("a,2.0,nan\n", 2),
])
def test_empirical_errors_carry_row(tmp_path, body, row):
    with pytest.raises(EmpiricalDataError) as info:
        read_empirical(_emp(tmp_path, "period,unemployment_rate,wage_growth\n" + body))
    assert info.value.row == row
    assert f"row {row}" in str(info.value)


def test_empirical_bad_header(tmp_path):
    with pytest.raises(EmpiricalDataError) as info:
        read_empirical(_emp(tmp_path, "quarter,u,w\n"))
    assert info.value.row == 1


# --- configuration ---------------------------------------------------------------

def test_fig3_preset():
    cfg = load_config(preset_path("fig3"))
    p = cfg.params
    assert (p.alpha, p.c, p.beta, p.gamma) == (0.5, 0.5, 0.5, 0.5)
    assert p.w0 == pytest.approx(1.0, rel=1e-15)
    assert cfg.sweep.variable == "L" and cfg.sweep.n == 200
    assert cfg.output.precision == 12


def test_all_presets_load():
    names = preset_names()
    for fig in ("fig2", "fig3", "fig4", "fig6a", "fig6b", "fig6c", "fig6d", "fig7", "fig8"):
        assert fig in names
    for name in names:
        assert load_config(preset_path(name)).name == name


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset_path("fig99")


def test_parse_error_has_line():
    text = BASE + "\n[sweep]\nmin = = 2\n"
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == text.splitlines().index("min = = 2") + 1
    assert f"line {info.value.line}" in str(info.value)


def test_missing_beta_named():
    with pytest.raises(ConfigError, match="beta"):
        parse_config(BASE.replace("beta = 0.5\n", ""))


@pytest.mark.parametrize("value", ["1.0", "0.0", "-0.2"])
def test_alpha_open_interval(value):
    with pytest.raises(ConfigError, match="alpha"):
        parse_config(BASE.replace("alpha = 0.5", f"alpha = {value}"))


def test_B_or_w0_exclusive():
    with pytest.raises(ConfigError):
        parse_config(BASE + "w0 = 1.0\n")
    with pytest.raises(ConfigError):
        parse_config(BASE.replace("B = 1.0\n", ""))


@pytest.mark.parametrize("sweep, word", [
    ("min = 2.0\nmax = 1.5\nn = 10", "min < max"),
    ("min = 1.1\nmax = 1.5\nn = 1", "n >= 2"),
    ("variable = 'L'\nmin = 0.9\nmax = 1.5\nn = 10", "above 1"),
    ("variable = 'x'\nmin = 1.1\nmax = 1.5\nn = 10", "variable"),
])
def test_sweep_validation(sweep, word):
    with pytest.raises(ConfigError, match=word):
        parse_config(BASE + "[sweep]\n" + sweep + "\n")


@pytest.mark.parametrize("precision", [5, 18])
def test_precision_bounds(precision):
    with pytest.raises(ConfigError, match="precision"):
        parse_config(BASE + f"[output]\nprecision = {precision}\n")


def test_experiment_blocks():
    cfg = parse_config(BASE + """
[[experiments]]
kind = "flatten"
name = "combo"
c = 0.9
B_percent = 20.0

[[experiments]]
kind = "ratio"
growth_I = 0.03
growth_II = 0.005
beta = 0.5
""")
    (flat,) = cfg.flatten_blocks
    (ratio,) = cfg.ratio_blocks
    assert flat.changes == {"c": 0.9, "B_percent": 20.0}
    assert ratio.B_ratio_grid == (1.0,)
    with pytest.raises(ConfigError, match="unknown"):
        parse_config(BASE + '[[experiments]]\nkind = "flatten"\nalpha = 0.3\n')


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_config(tmp_path / "nope.toml")
