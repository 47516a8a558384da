"""Per-iteration regret statistics across repeated runs."""
import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from src.core.exceptions import ContractViolation, UsageException
from src.core.logging import get_logger
from .traces import format_float, parse_trace_filename, read_trace_file

logger = get_logger(__name__)

SUMMARY_FILENAME = "summary.csv"
SUMMARY_HEADER = ["method", "f_star", "iter", "runs", "mean", "median", "q1", "q3"]
FINAL = "final"

Cell = tuple[str, float]


@dataclass(frozen=True)
class SummaryRow:
    method: str
    f_star: float
    iter: int | str
    runs: int
    mean: float
    median: float
    q1: float
    q3: float

    @property
    def is_final(self) -> bool:
        return self.iter == FINAL


def carry_forward(regrets: Sequence[Sequence[float]]) -> np.ndarray:
    """Stack runs into an (R, L) array, padding early stops with their last regret."""
    if not regrets or any(len(r) == 0 for r in regrets):
        raise ContractViolation("Every run needs at least one regret value")
    length = max(len(r) for r in regrets)
    return np.array([list(r) + [r[-1]] * (length - len(r)) for r in regrets], dtype=float)


def _stats(values: np.ndarray) -> tuple[float, float, float, float]:
    q1, q3 = np.percentile(values, [25.0, 75.0], method="linear")
    return float(np.mean(values)), float(np.median(values)), float(q1), float(q3)


def summarize(cells: Mapping[Cell, Sequence[Sequence[float]]]) -> list[SummaryRow]:
    """Mean, median and interquartile range of simple regret per cell and iteration.

    Args:
        cells: (method, declared f*) -> one regret sequence per run, runs in run-id order

    Returns:
        Rows ordered by cell then iteration; each cell ends with a final-regret row
    """
    rows: list[SummaryRow] = []
    for (method, f_star) in sorted(cells):
        runs = cells[(method, f_star)]
        matrix = carry_forward(runs)
        for t in range(matrix.shape[1]):
            rows.append(SummaryRow(method, f_star, t + 1, matrix.shape[0], *_stats(matrix[:, t])))
        finals = np.array([r[-1] for r in runs], dtype=float)
        rows.append(SummaryRow(method, f_star, FINAL, len(runs), *_stats(finals)))
    return rows


def load_cells(directory: Path) -> dict[Cell, list[list[float]]]:
    """Regret sequences of every trace file in a directory, keyed by cell.

    Raises:
        UsageException: If the directory holds no trace files
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise UsageException(f"Not a directory: {directory}")
    cells: dict[Cell, list[list[float]]] = {}
    for path in sorted(directory.iterdir()):
        cell = parse_trace_filename(path)
        if cell is None:
            continue
        runs = read_trace_file(path)
        cells[cell] = [[row.regret for row in runs[run_id]] for run_id in sorted(runs)]
    if not cells:
        raise UsageException(f"No trace files found in {directory}")
    return cells


def write_summary_file(path: Path, rows: Sequence[SummaryRow]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for row in rows:
            writer.writerow([
                row.method,
                format_float(row.f_star),
                row.iter,
                row.runs,
                format_float(row.mean),
                format_float(row.median),
                format_float(row.q1),
                format_float(row.q3),
            ])
    logger.info(f"Wrote summary file {path}")
    return path


def summarize_directory(directory: Path) -> tuple[list[SummaryRow], Path]:
    """Re-aggregate the trace files of a directory and rewrite its summary."""
    rows = summarize(load_cells(directory))
    return rows, write_summary_file(Path(directory) / SUMMARY_FILENAME, rows)
