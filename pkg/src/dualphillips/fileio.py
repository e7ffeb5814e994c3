"""CSV reading and writing with deterministic float formatting."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from dualphillips.statics import CURVE_COLUMNS, FlatteningResult, PhillipsCurve, RatioLine

__all__ = [
    "EmpiricalDataError",
    "EmpiricalRow",
    "format_float",
    "read_columns",
    "read_curve_csv",
    "read_empirical",
    "write_columns",
    "write_curve_csv",
    "write_flattening_csv",
    "write_ratio_csv",
]


class EmpiricalDataError(ValueError):
    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


def format_float(x: float, precision: int = 17) -> str:
    """Shortest round-trip repr, or ``precision`` significant digits if that is shorter."""
    x = float(x)
    if not math.isfinite(x):
        return repr(x)
    short = repr(x)
    digits = len(short.split("e")[0].replace("-", "").replace(".", "").lstrip("0"))
    if digits <= precision:
        return short
    rounded = float(format(x, f".{precision}g"))
    # Rounding up near the largest double overflows; keep the exact repr there.
    return repr(rounded) if math.isfinite(rounded) else short


def write_columns(path: Path, columns: Mapping[str, Sequence[float]], precision: int) -> Path:
    """Write equal-length columns as CSV (header row, LF line endings, UTF-8)."""
    names = list(columns)
    lengths = {len(columns[n]) for n in names}
    if len(lengths) > 1:
        raise ValueError(f"columns have different lengths: {sorted(lengths)}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row in zip(*(columns[n] for n in names)):
        writer.writerow([format_float(x, precision) for x in row])
    path = Path(path)
    path.write_bytes(buf.getvalue().encode("utf-8"))
    return path


def read_columns(path: Path) -> dict[str, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(x) for x in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, k] for k, name in enumerate(header)}


def write_curve_csv(path: Path, curve: PhillipsCurve, precision: int = 17) -> Path:
    return write_columns(path, curve.columns(), precision)


def read_curve_csv(path: Path) -> dict[str, np.ndarray]:
    cols = read_columns(path)
    missing = [c for c in CURVE_COLUMNS if c not in cols]
    if missing:
        raise ValueError(f"{path}: missing curve column(s) {missing}")
    return cols


def write_flattening_csv(path: Path, result: FlatteningResult, precision: int = 17) -> Path:
    return write_columns(path, {
        "L_over_L1": result.L_over_L1,
        "wbar_base": result.base.wbar,
        "wbar_modified": result.modified.wbar,
        "slope_base": result.slope_base,
        "slope_modified": result.slope_modified,
        "slope_ratio": result.slope_ratio,
    }, precision)


def write_ratio_csv(path: Path, lines: Sequence[RatioLine], precision: int = 17) -> Path:
    b = np.concatenate([np.full(len(ln.c_ratio), ln.B_ratio) for ln in lines])
    c = np.concatenate([ln.c_ratio for ln in lines])
    gam = np.concatenate([ln.gamma_ratio for ln in lines])
    return write_columns(path, {"B_ratio": b, "c_ratio": c, "gamma_ratio": gam}, precision)


@dataclass(frozen=True)
class EmpiricalRow:
    period: str
    unemployment_rate: float
    wage_growth: float

    @property
    def employment_rate(self) -> float:
        return 100.0 - self.unemployment_rate


EMPIRICAL_HEADER = ("period", "unemployment_rate", "wage_growth")


def read_empirical(path: Path) -> list[EmpiricalRow]:
    """Read ``period,unemployment_rate,wage_growth`` rows (both rates in percent).

    Row numbers in errors count file lines, header included.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        lines = list(csv.reader(fh))
    if not lines:
        return []
    header = tuple(h.strip() for h in lines[0])
    if header != EMPIRICAL_HEADER:
        raise EmpiricalDataError(1, f"expected header {','.join(EMPIRICAL_HEADER)}, got {','.join(header)}")
    rows = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw or all(not f.strip() for f in raw):
            continue
        if len(raw) != 3:
            raise EmpiricalDataError(lineno, f"expected 3 fields, got {len(raw)}")
        period = raw[0].strip()
        try:
            u, growth = float(raw[1]), float(raw[2])
        except ValueError as exc:
            raise EmpiricalDataError(lineno, str(exc)) from None
        if not 0 < u < 100:
            raise EmpiricalDataError(lineno, f"unemployment_rate must lie in (0, 100), got {u!r}")
        if not math.isfinite(growth):
            raise EmpiricalDataError(lineno, f"wage_growth must be finite, got {growth!r}")
        rows.append(EmpiricalRow(period, u, growth))
    return rows
