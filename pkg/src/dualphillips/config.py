"""Run configuration files (TOML)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from dualphillips.model import InvalidParameterError, ModelParams
from dualphillips.statics import CHANGE_KEYS

__all__ = [
    "ConfigError",
    "FIGURES",
    "FlattenBlock",
    "OutputConfig",
    "RatioBlock",
    "RunConfig",
    "SweepConfig",
    "load_config",
    "parse_config",
    "preset_names",
    "preset_path",
]

FIGURES = ("supply_demand", "phillips", "wages", "beta_supply")


class ConfigError(ValueError):
    """Invalid configuration; ``line`` is set for syntax errors."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class SweepConfig:
    variable: str = "L"
    min: float = 1.005
    max: float = 2.0
    n: int = 200
    spacing: str = "linear"


@dataclass(frozen=True)
class OutputConfig:
    dir: str = "out"
    formats: tuple[str, ...] = ("csv", "svg")
    precision: int = 12


@dataclass(frozen=True)
class FlattenBlock:
    name: str
    changes: dict[str, float]


@dataclass(frozen=True)
class RatioBlock:
    name: str
    growth_I: float
    growth_II: float
    beta: float
    B_ratio_grid: tuple[float, ...]
    c_ratio_min: float = 1.0
    c_ratio_max: float = 1.03
    c_ratio_n: int = 61


@dataclass(frozen=True)
class RunConfig:
    name: str
    params: ModelParams
    sweep: SweepConfig = field(default_factory=SweepConfig)
    experiments: tuple[FlattenBlock | RatioBlock, ...] = ()
    output: OutputConfig = field(default_factory=OutputConfig)
    figures: tuple[str, ...] = ()
    betas: tuple[float, ...] = ()

    @property
    def flatten_blocks(self) -> list[FlattenBlock]:
        return [e for e in self.experiments if isinstance(e, FlattenBlock)]

    @property
    def ratio_blocks(self) -> list[RatioBlock]:
        return [e for e in self.experiments if isinstance(e, RatioBlock)]


def _num(section: dict, key: str, where: str, default: Any = None, kind=float):
    if key not in section:
        if default is None:
            raise ConfigError(f"{where}.{key}: missing required value")
        return default
    val = section[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{where}.{key}: expected a number, got {val!r}")
    if kind is int:
        if isinstance(val, float) and not val.is_integer():
            raise ConfigError(f"{where}.{key}: expected an integer, got {val!r}")
        return int(val)
    return float(val)


def _params(sec: dict) -> ModelParams:
    if not isinstance(sec, dict):
        raise ConfigError("params: missing [params] section")
    vals = {k: _num(sec, k, "params") for k in ("alpha", "c", "beta", "gamma", "L1")}
    A = _num(sec, "A", "params", default=1.0)
    if ("B" in sec) == ("w0" in sec):
        raise ConfigError("params: give exactly one of B or w0")
    try:
        if "w0" in sec:
            return ModelParams.from_w0(w0=_num(sec, "w0", "params"), A=A, **vals)
        return ModelParams(B=_num(sec, "B", "params"), A=A, **vals)
    except InvalidParameterError as exc:
        raise ConfigError(f"params.{exc}") from None


def _sweep(sec: dict) -> SweepConfig:
    s = SweepConfig(
        variable=sec.get("variable", "L"),
        min=_num(sec, "min", "sweep"),
        max=_num(sec, "max", "sweep"),
        n=_num(sec, "n", "sweep", kind=int),
        spacing=sec.get("spacing", "linear"),
    )
    if s.variable not in ("g", "A", "L"):
        raise ConfigError(f"sweep.variable: must be g, A or L, got {s.variable!r}")
    if s.spacing not in ("linear", "log"):
        raise ConfigError(f"sweep.spacing: must be linear or log, got {s.spacing!r}")
    if not s.min < s.max:
        raise ConfigError(f"sweep: min < max violated ({s.min!r} >= {s.max!r})")
    if not s.min > 0:
        raise ConfigError(f"sweep.min: must be positive, got {s.min!r}")
    if s.variable == "L" and not s.min > 1:
        raise ConfigError(f"sweep.min: L/L1 sweep must start above 1, got {s.min!r}")
    if s.n < 2:
        raise ConfigError(f"sweep.n: need n >= 2, got {s.n!r}")
    return s


def _output(sec: dict) -> OutputConfig:
    formats = sec.get("formats", ["csv", "svg"])
    if isinstance(formats, str):
        formats = [f.strip() for f in formats.split(",") if f.strip()]
    bad = [f for f in formats if f not in ("csv", "svg")]
    if bad:
        raise ConfigError(f"output.formats: unknown format(s) {bad}")
    precision = _num(sec, "precision", "output", default=12, kind=int)
    if not 6 <= precision <= 17:
        raise ConfigError(f"output.precision: must lie in [6, 17], got {precision!r}")
    return OutputConfig(dir=str(sec.get("dir", "out")), formats=tuple(formats), precision=precision)


def _experiment(k: int, sec: dict) -> FlattenBlock | RatioBlock:
    where = f"experiments[{k}]"
    kind = sec.get("kind")
    name = str(sec.get("name", f"experiment{k}"))
    if kind == "flatten":
        changes = {key: _num(sec, key, where) for key in CHANGE_KEYS if key in sec}
        extra = set(sec) - set(CHANGE_KEYS) - {"kind", "name"}
        if extra:
            raise ConfigError(f"{where}: unknown key(s) {sorted(extra)}")
        return FlattenBlock(name=name, changes=changes)
    if kind == "ratio":
        grid = sec.get("B_ratio_grid", [1.0])
        if not isinstance(grid, list) or not grid:
            raise ConfigError(f"{where}.B_ratio_grid: expected a non-empty list")
        block = RatioBlock(
            name=name,
            growth_I=_num(sec, "growth_I", where),
            growth_II=_num(sec, "growth_II", where),
            beta=_num(sec, "beta", where),
            B_ratio_grid=tuple(float(b) for b in grid),
            c_ratio_min=_num(sec, "c_ratio_min", where, default=1.0),
            c_ratio_max=_num(sec, "c_ratio_max", where, default=1.03),
            c_ratio_n=_num(sec, "c_ratio_n", where, default=61, kind=int),
        )
        if not block.beta > 0:
            raise ConfigError(f"{where}.beta: must be positive")
        if any(b <= 0 for b in block.B_ratio_grid):
            raise ConfigError(f"{where}.B_ratio_grid: values must be positive")
        return block
    raise ConfigError(f"{where}.kind: must be 'flatten' or 'ratio', got {kind!r}")


def parse_config(text: str, name: str = "run") -> RunConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ConfigError(f"parse error: {exc}", line=int(m.group(1)) if m else None) from None
    if "params" not in doc:
        raise ConfigError("params: missing [params] section")
    plot = doc.get("plot", {})
    figures = tuple(plot.get("figures", ()))
    bad = [f for f in figures if f not in FIGURES]
    if bad:
        raise ConfigError(f"plot.figures: unknown figure(s) {bad}")
    return RunConfig(
        name=str(doc.get("name", name)),
        params=_params(doc["params"]),
        sweep=_sweep(doc["sweep"]) if "sweep" in doc else SweepConfig(),
        experiments=tuple(_experiment(k, e) for k, e in enumerate(doc.get("experiments", []))),
        output=_output(doc.get("output", {})),
        figures=figures,
        betas=tuple(float(b) for b in plot.get("betas", ())),
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), name=path.stem)


def preset_names() -> list[str]:
    root = resources.files("dualphillips") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".toml"))


def preset_path(name: str) -> Path:
    path = Path(str(resources.files("dualphillips") / "presets" / f"{name}.toml"))
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return path
