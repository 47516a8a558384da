from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from src.core.logging import get_logger
from .summary import SummaryRow
from .traces import RunTrace

logger = get_logger(__name__)


@dataclass
class RunFailure:
    """A run that raised instead of returning a trace."""
    method: str
    f_star_declared: float
    run_id: int
    seed: int
    error_type: str
    message: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "f_star_declared": self.f_star_declared,
            "run_id": self.run_id,
            "seed": self.seed,
            "error_type": self.error_type,
            "message": self.message,
            "details": self.details,
        }


class ReportGenerator:
    """Generates the markdown report of one experiment."""

    def __init__(self, problem: str, iterations: int, repetitions: int, base_seed: int):
        self.problem = problem
        self.iterations = iterations
        self.repetitions = repetitions
        self.base_seed = base_seed
        self.traces: List[RunTrace] = []
        self.failures: List[RunFailure] = []
        self.rows: List[SummaryRow] = []

    def add_trace(self, trace: RunTrace):
        self.traces.append(trace)

    def add_failure(self, failure: RunFailure):
        self.failures.append(failure)

    def set_summary(self, rows: List[SummaryRow]):
        self.rows = list(rows)

    def get_summary_stats(self) -> dict:
        reached = sum(1 for t in self.traces if t.stop_reason == "reached_f_star")
        switched = sum(1 for t in self.traces if t.switched_at is not None)
        stats = {
            "Runs": len(self.traces) + len(self.failures),
            "Completed": len(self.traces),
            "Reached f*": reached,
            "Switched to informed phase": switched,
        }
        if self.failures:
            stats["Failed"] = len(self.failures)
        return stats

    def _final_rows(self) -> List[SummaryRow]:
        return [r for r in self.rows if r.is_final]

    def _generate_results_section(self) -> List[str]:
        lines = ["## Final simple regret", ""]
        finals = self._final_rows()
        if not finals:
            lines.append("_No completed runs._")
            return lines
        lines.append("| Method | Declared f* | Runs | Mean | Median | Q1 | Q3 |")
        lines.append("|--------|-------------|------|------|--------|----|----|")
        for r in finals:
            lines.append(
                f"| `{r.method}` | {r.f_star:g} | {r.runs} | {r.mean:.6g} | "
                f"{r.median:.6g} | {r.q1:.6g} | {r.q3:.6g} |"
            )
        return lines

    def _generate_failures_section(self) -> List[str]:
        lines = ["## Failed runs", ""]
        for f in sorted(self.failures, key=lambda f: (f.method, f.f_star_declared, f.run_id)):
            lines.append(f"- `{f.method}` f*={f.f_star_declared:g} run {f.run_id} (seed {f.seed}): "
                         f"**{f.error_type}** {f.message}")
        return lines

    def render(self) -> str:
        lines = [
            f"# Experiment Report: {self.problem}",
            "",
            "| Setting | Value |",
            "|---------|-------|",
            f"| **Problem** | `{self.problem}` |",
            f"| **Iterations** | {self.iterations} |",
            f"| **Repetitions** | {self.repetitions} |",
            f"| **Base seed** | {self.base_seed} |",
            "",
            "## Summary",
            "",
            "| Metric | Count |",
            "|--------|-------|",
        ]
        lines.extend(f"| {label} | {value} |" for label, value in self.get_summary_stats().items())
        lines.append("")
        lines.extend(self._generate_results_section())
        if self.failures:
            lines.append("")
            lines.extend(self._generate_failures_section())
        lines.append("")
        return "\n".join(lines)

    def save_report(self, filepath: str | Path) -> Path:
        """Write the report; content depends only on the experiment's results."""
        path = Path(filepath)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.render())
        logger.info(f"Wrote report {path}")
        return path
