"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 solver failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from dualphillips import plotting
from dualphillips.config import ConfigError, RunConfig, load_config, preset_names, preset_path
from dualphillips.fileio import (
    EmpiricalDataError,
    format_float,
    read_curve_csv,
    read_empirical,
    write_columns,
    write_curve_csv,
    write_flattening_csv,
    write_ratio_csv,
)
from dualphillips.model import SolverError, aggregate_equilibrium
from dualphillips.statics import (
    EquilibriumCheckError,
    RatioScenario,
    flattening_experiment,
    ratio_surface,
    solve_equal_ratio,
    solve_single_ratio,
    sweep_grid,
    trace_curve,
)

EXIT_OK, EXIT_INVALID, EXIT_SOLVER, EXIT_IO = 0, 1, 2, 3


@dataclass
class RunResult:
    files: list[Path] = field(default_factory=list)
    failures: list[tuple[float, str]] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    def extend(self, other: "RunResult") -> None:
        self.files += other.files
        self.failures += other.failures
        self.lines += other.lines


def _prepare(config: RunConfig, out: str | Path | None) -> Path:
    d = Path(out if out is not None else config.output.dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _fmt(x: float, config: RunConfig) -> str:
    return format_float(x, config.output.precision)


def run_solve(config: RunConfig) -> RunResult:
    eq = aggregate_equilibrium(config.params)
    res = RunResult()
    for name in ("g", "v", "w2", "L2", "L", "W", "wbar", "wbar1", "Z"):
        res.lines.append(f"{name} = {_fmt(getattr(eq, name), config)}")
    res.lines.append(f"market_clearing_residual = {eq.market_clearing_residual():.3e}")
    return res


def run_curve(config: RunConfig, out: str | Path | None = None) -> RunResult:
    d = _prepare(config, out)
    s = config.sweep
    grid = sweep_grid(s.min, s.max, s.n, s.spacing)
    curve = trace_curve(config.params, grid, variable=s.variable, on_error="skip")
    res = RunResult(failures=list(curve.failures))
    fmt = config.output.formats
    if "csv" in fmt:
        res.files.append(write_curve_csv(d / f"{config.name}_curve.csv", curve, config.output.precision))
    if "svg" in fmt:
        for fig in config.figures:
            path = d / f"{config.name}_{fig}.svg"
            if fig == "supply_demand":
                plotting.plot_supply_demand(config.params, path)
            elif fig == "phillips":
                plotting.plot_phillips(curve, path)
            elif fig == "wages":
                plotting.plot_wages(curve, path)
            elif fig == "beta_supply":
                betas = config.betas or (config.params.beta, config.params.beta + 0.1)
                plotting.plot_beta_supply(config.params, betas, path)
            res.files.append(path)
    res.lines.append(f"curve: {len(curve)} points, {len(curve.failures)} failures")
    return res


def _flatten_grid(config: RunConfig) -> np.ndarray:
    s = config.sweep
    if s.variable != "L":
        raise ConfigError("flatten experiments need sweep.variable = 'L' (a shared L/L1 grid)")
    return sweep_grid(s.min, s.max, s.n, s.spacing)


def run_flatten(config: RunConfig, out: str | Path | None = None) -> RunResult:
    d = _prepare(config, out)
    res = RunResult()
    if not config.flatten_blocks:
        raise ConfigError("no [[experiments]] block with kind = 'flatten'")
    grid = _flatten_grid(config)
    prec = config.output.precision
    for block in config.flatten_blocks:
        result = flattening_experiment(config.params, block.changes, grid)
        stem = f"{config.name}_{block.name}"
        if "csv" in config.output.formats:
            res.files.append(write_curve_csv(d / f"{stem}_base.csv", result.base, prec))
            res.files.append(write_curve_csv(d / f"{stem}_modified.csv", result.modified, prec))
            res.files.append(write_flattening_csv(d / f"{stem}_slopes.csv", result, prec))
        if "svg" in config.output.formats:
            label = ", ".join(f"{k}={v:g}" for k, v in block.changes.items())
            res.files.append(plotting.plot_flattening(result, d / f"{stem}.svg", label))
        ratio = result.slope_ratio
        res.lines.append(
            f"{block.name}: slope ratio min {_fmt(ratio.min(), config)} "
            f"max {_fmt(ratio.max(), config)}; flatter everywhere: {bool(np.all(ratio < 1))}")
    return res


def run_ratio(config: RunConfig, out: str | Path | None = None) -> RunResult:
    d = _prepare(config, out)
    res = RunResult()
    if not config.ratio_blocks:
        raise ConfigError("no [[experiments]] block with kind = 'ratio'")
    for block in config.ratio_blocks:
        sc = RatioScenario(block.growth_I, block.growth_II, block.beta)
        res.lines += [
            f"{block.name}: target = {_fmt(sc.target, config)}",
            f"{block.name}: r = {_fmt(solve_equal_ratio(sc), config)}",
            f"{block.name}: c_ratio (c only) = {_fmt(solve_single_ratio(sc, 'c'), config)}",
            f"{block.name}: gamma_ratio (gamma only) = {_fmt(solve_single_ratio(sc, 'gamma'), config)}",
            f"{block.name}: B_ratio (B only) = {_fmt(solve_single_ratio(sc, 'B'), config)}",
        ]
        c_grid = np.linspace(block.c_ratio_min, block.c_ratio_max, block.c_ratio_n)
        lines = ratio_surface(sc, block.B_ratio_grid, c_grid)
        stem = f"{config.name}_{block.name}"
        if "csv" in config.output.formats:
            res.files.append(write_ratio_csv(d / f"{stem}_surface.csv", lines, config.output.precision))
        if "svg" in config.output.formats:
            res.files.append(plotting.plot_ratio(lines, sc, d / f"{stem}.svg"))
    return res


def run(config: RunConfig, out: str | Path | None = None) -> RunResult:
    """Produce every artifact the configuration describes."""
    res = run_curve(config, out)
    if config.flatten_blocks:
        res.extend(run_flatten(config, out))
    if config.ratio_blocks:
        res.extend(run_ratio(config, out))
    return res


def run_overlay(curve_csv: str | Path, empirical_csv: str | Path, out_svg: str | Path) -> RunResult:
    curve = read_curve_csv(curve_csv)
    rows = read_empirical(empirical_csv)
    path, n = plotting.plot_overlay(curve, rows, Path(out_svg))
    return RunResult(files=[path], lines=[f"overlay: {n} empirical markers"])


def _write_failures(d: Path, name: str, failures, config: RunConfig) -> Path:
    path = d / f"{name}_failures.csv"
    text = "sweep_value,message\n" + "".join(
        f"{_fmt(v, config)},\"{m.replace(chr(34), chr(39))}\"\n" for v, m in failures)
    path.write_bytes(text.encode("utf-8"))
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualphillips", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--config", metavar="PATH", help="TOML run configuration")
            src.add_argument("--preset", choices=preset_names(), help="bundled configuration")
        p.add_argument("--out", metavar="DIR", help="output directory (overrides output.dir)")
        p.add_argument("--format", metavar="LIST", help="comma separated subset of csv,svg")
        p.add_argument("--precision", type=int, metavar="N", help="significant digits, 6-17")

    common(sub.add_parser("solve", help="solve one equilibrium and print it"))
    common(sub.add_parser("curve", help="trace a Phillips curve and emit CSV/SVG"))
    common(sub.add_parser("flatten", help="run flattening experiments"))
    common(sub.add_parser("ratio", help="solve the two-period ratio scenario"))
    common(sub.add_parser("run", help="everything the configuration describes"))
    ov = sub.add_parser("overlay", help="plot empirical data over a model curve")
    ov.add_argument("--curve", required=True, metavar="CSV", help="curve CSV from `curve`")
    ov.add_argument("--empirical", required=True, metavar="CSV",
                    help="period,unemployment_rate,wage_growth")
    common(ov, config=False)
    return parser


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    out = config.output
    if args.format:
        formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
        if any(f not in ("csv", "svg") for f in formats):
            raise ConfigError(f"--format: expected csv and/or svg, got {args.format!r}")
        out = replace(out, formats=formats)
    if args.precision is not None:
        if not 6 <= args.precision <= 17:
            raise ConfigError(f"--precision: must lie in [6, 17], got {args.precision}")
        out = replace(out, precision=args.precision)
    return replace(config, output=out)


COMMANDS = {"solve": run_solve, "curve": run_curve, "flatten": run_flatten,
            "ratio": run_ratio, "run": run}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "overlay":
            out = Path(args.out or ".")
            out.mkdir(parents=True, exist_ok=True)
            res = run_overlay(args.curve, args.empirical, out / f"{Path(args.curve).stem}_overlay.svg")
            failures_path = None
        else:
            config = load_config(args.config or preset_path(args.preset))
            config = _apply_overrides(config, args)
            func = COMMANDS[args.command]
            res = func(config) if args.command == "solve" else func(config, args.out)
            failures_path = None
            if res.failures:
                d = _prepare(config, args.out)
                failures_path = _write_failures(d, config.name, res.failures, config)
        for line in res.lines:
            print(line)
        for path in res.files:
            print(f"wrote {path}")
        if res.failures:
            print(f"{len(res.failures)} sweep point(s) failed; see {failures_path}", file=sys.stderr)
            return EXIT_SOLVER
        return EXIT_OK
    except (ConfigError, EmpiricalDataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SolverError, EquilibriumCheckError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
