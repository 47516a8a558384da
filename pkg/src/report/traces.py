"""
Run traces and their CSV files.

One CSV per experiment cell (method x declared f*), one row per
evaluation, floats written with 17 significant digits so a re-read
reproduces the in-memory values bit for bit.
"""
import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from src.core.exceptions import ConfigParseException
from src.core.logging import get_logger

logger = get_logger(__name__)

TRACE_PREFIX = "trace"
_TRACE_NAME = re.compile(r"^trace__(?P<method>[a-z_]+-[a-z]+)__fstar=(?P<fstar>[^/]+)\.csv$")


@dataclass(frozen=True)
class TraceRecord:
    """One evaluation of the objective."""
    t: int
    x: tuple[float, ...]
    y_raw: float
    best_so_far: float
    simple_regret: float
    phase: str
    acq_value: float = float("nan")


@dataclass
class RunTrace:
    """Everything recorded for one seeded run."""
    run_id: int
    seed: int
    method: str
    f_star_declared: float
    f_star_true: float
    records: list[TraceRecord] = field(default_factory=list)
    switched_at: Optional[int] = None
    g_transforms: int = 0
    stop_reason: str = "budget"

    @property
    def final_regret(self) -> float:
        return self.records[-1].simple_regret

    @property
    def y_values(self) -> list[float]:
        return [r.y_raw for r in self.records]


@dataclass(frozen=True)
class TraceRow:
    """A trace row as read back from disk."""
    run: int
    seed: int
    iter: int
    phase: str
    x: tuple[float, ...]
    y: float
    best: float
    regret: float


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def trace_filename(method: str, f_star_declared: float) -> str:
    return f"{TRACE_PREFIX}__{method}__fstar={format_float(f_star_declared)}.csv"


def parse_trace_filename(path: Path) -> Optional[tuple[str, float]]:
    """(method, declared f*) encoded in a trace file name, or None for other files."""
    match = _TRACE_NAME.match(Path(path).name)
    if not match:
        return None
    return match.group("method"), float(match.group("fstar"))


def trace_header(dim: int) -> list[str]:
    return ["run", "seed", "iter", "phase", *[f"x{i}" for i in range(dim)], "y", "best", "regret"]


def write_trace_file(path: Path, traces: Iterable[RunTrace], dim: int) -> Path:
    """Write the traces of one cell, ordered by run id."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(trace_header(dim))
        for trace in sorted(traces, key=lambda tr: tr.run_id):
            for record in trace.records:
                writer.writerow([
                    trace.run_id,
                    trace.seed,
                    record.t,
                    record.phase,
                    *[format_float(v) for v in record.x],
                    format_float(record.y_raw),
                    format_float(record.best_so_far),
                    format_float(record.simple_regret),
                ])
    logger.info(f"Wrote trace file {path}")
    return path


def read_trace_file(path: Path) -> dict[int, list[TraceRow]]:
    """Rows of a trace file grouped by run id, each run ordered by iteration."""
    path = Path(path)
    runs: dict[int, list[TraceRow]] = {}
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigParseException(f"Trace file {path} is empty")
        x_cols = [i for i, name in enumerate(header) if re.fullmatch(r"x\d+", name)]
        expected = trace_header(len(x_cols))
        if header != expected:
            raise ConfigParseException(f"Trace file {path} has an unexpected header", line=1, column=1)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                parsed = TraceRow(
                    run=int(row[0]),
                    seed=int(row[1]),
                    iter=int(row[2]),
                    phase=row[3],
                    x=tuple(float(row[i]) for i in x_cols),
                    y=float(row[-3]),
                    best=float(row[-2]),
                    regret=float(row[-1]),
                )
            except (ValueError, IndexError) as e:
                raise ConfigParseException(f"Malformed row in {path}: {e}", line=line_no, column=1)
            runs.setdefault(parsed.run, []).append(parsed)
    for rows in runs.values():
        rows.sort(key=lambda r: r.iter)
    return runs
