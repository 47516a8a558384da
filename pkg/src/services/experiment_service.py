"""Experiment service: repeated seeded runs over a method x declared-f* grid.

Runs are independent and execute on a thread pool. Each cell's traces
are written to one file after all runs finish, and the summary is
computed from those files, so the outputs do not depend on scheduling.
"""
import json
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from src.benchmarks import BenchmarkProblem, get_problem
from src.config.experiment import ExperimentConfig, MethodSpec
from src.core.exceptions import KnownOptException
from src.core.logging import get_logger
from src.report.generator import ReportGenerator, RunFailure
from src.report.summary import SUMMARY_FILENAME, SummaryRow, summarize, write_summary_file
from src.report.traces import RunTrace, parse_trace_filename, read_trace_file, trace_filename, write_trace_file
from .bo_loop import BoConfig, run

logger = get_logger(__name__)

FAILURES_FILENAME = "failures.json"
REPORT_FILENAME = "report.md"

ProgressCallback = Callable[[int, int, str], None]


@dataclass
class ExperimentResult:
    """Outputs of one experiment."""
    traces: list[RunTrace]
    failures: list[RunFailure]
    summary: list[SummaryRow]
    trace_files: list[Path] = field(default_factory=list)
    summary_file: Optional[Path] = None

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    @property
    def total_runs(self) -> int:
        return len(self.traces) + len(self.failures)


@dataclass(frozen=True)
class _RunTask:
    method: MethodSpec
    f_star_declared: float
    run_index: int
    seed: int


class ExperimentService:
    """Runs experiment grids and writes their trace, summary and report files."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.problem: BenchmarkProblem = get_problem(config.problem)

    def tasks(self) -> list[_RunTask]:
        return [
            _RunTask(method, f_star, i, self.config.seed + i)
            for method, f_star in self.config.cells
            for i in range(self.config.repetitions)
        ]

    def bo_config(self, task: _RunTask) -> BoConfig:
        return BoConfig(
            objective=self.problem,
            domain_bounds=self.problem.bounds_array,
            f_star_declared=task.f_star_declared,
            acquisition=task.method.acquisition,
            surrogate=task.method.surrogate,
            T=self.config.iterations,
            n_init=self.config.n_init,
            seed=task.seed,
            delta=self.config.delta,
            m0_mode=self.config.m0_mode,
            f_star_true=self.problem.f_true_star,
            run_id=task.run_index,
        )

    def _run_task(self, task: _RunTask) -> RunTrace:
        return run(self.bo_config(task))

    def run_experiment(self, progress_callback: Optional[ProgressCallback] = None) -> ExperimentResult:
        """Execute every run of the grid and write the output files.

        Args:
            progress_callback: Optional callback (completed, total, description)

        Returns:
            ExperimentResult; per-run failures are collected, not raised
        """
        config = self.config
        tasks = self.tasks()
        total = len(tasks)
        logger.info(
            f"Starting experiment on {self.problem.name}: {len(config.methods)} methods x "
            f"{len(config.f_star_declared)} declared f* x {config.repetitions} runs",
            extra={"context": {"problem": self.problem.name, "runs": total, "config": config.to_dict()}},
        )

        traces: dict[tuple[str, float], list[RunTrace]] = {
            (m.name, f): [] for m, f in config.cells
        }
        failures: list[RunFailure] = []
        lock = threading.Lock()
        completed = 0

        max_workers = max(1, min(config.workers, total))
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_to_task = {executor.submit(self._run_task, t): t for t in tasks}
            for future in as_completed(future_to_task):
                task = future_to_task[future]
                cell = (task.method.name, task.f_star_declared)
                try:
                    trace = future.result()
                    with lock:
                        traces[cell].append(trace)
                except Exception as e:
                    details = e.details if isinstance(e, KnownOptException) else {}
                    message = e.message if isinstance(e, KnownOptException) else str(e)
                    failure = RunFailure(
                        method=task.method.name,
                        f_star_declared=task.f_star_declared,
                        run_id=task.run_index,
                        seed=task.seed,
                        error_type=type(e).__name__,
                        message=message,
                        details=dict(details),
                    )
                    with lock:
                        failures.append(failure)
                    logger.error(
                        f"Run {task.run_index} of {task.method.name} (f*={task.f_star_declared:g}) "
                        f"failed: {message}",
                        extra={"context": failure.to_dict()},
                    )
                with lock:
                    completed += 1
                    if progress_callback:
                        progress_callback(
                            completed, total,
                            f"{task.method.name} f*={task.f_star_declared:g} run {task.run_index}",
                        )

        return self._write_outputs(traces, failures)

    def _remove_stale_traces(self, out: Path, current: list[Path]) -> None:
        """Delete trace files left by earlier experiments so summaries see only this one."""
        keep = {p.name for p in current}
        for path in sorted(out.iterdir()):
            if path.is_file() and parse_trace_filename(path) is not None and path.name not in keep:
                logger.warning(f"Removing stale trace file {path} from an earlier experiment")
                path.unlink()

    def _write_outputs(
        self,
        traces: dict[tuple[str, float], list[RunTrace]],
        failures: list[RunFailure],
    ) -> ExperimentResult:
        out = self.config.output_path
        out.mkdir(parents=True, exist_ok=True)

        trace_files: list[Path] = []
        cells: dict[tuple[str, float], list[list[float]]] = {}
        for (method, f_star), cell_traces in traces.items():
            if not cell_traces:
                logger.warning(f"Every run of {method} with f*={f_star:g} failed; no trace file written")
                continue
            path = write_trace_file(out / trace_filename(method, f_star), cell_traces, self.problem.dim)
            trace_files.append(path)
            runs = read_trace_file(path)
            cells[(method, f_star)] = [[row.regret for row in runs[r]] for r in sorted(runs)]
        self._remove_stale_traces(out, trace_files)

        rows = summarize(cells)
        summary_file = write_summary_file(out / SUMMARY_FILENAME, rows)

        failures = sorted(failures, key=lambda f: (f.method, f.f_star_declared, f.run_id))
        failures_path = out / FAILURES_FILENAME
        if failures:
            with open(failures_path, "w", encoding="utf-8") as f:
                json.dump([x.to_dict() for x in failures], f, indent=2, sort_keys=True, default=str)
            logger.warning(f"{len(failures)} runs failed; see {failures_path}")
        elif failures_path.exists():
            failures_path.unlink()

        all_traces = sorted(
            (t for cell_traces in traces.values() for t in cell_traces),
            key=lambda t: (t.method, t.f_star_declared, t.run_id),
        )
        report = ReportGenerator(
            problem=self.problem.name,
            iterations=self.config.iterations,
            repetitions=self.config.repetitions,
            base_seed=self.config.seed,
        )
        for trace in all_traces:
            report.add_trace(trace)
        for failure in failures:
            report.add_failure(failure)
        report.set_summary(rows)
        report.save_report(out / REPORT_FILENAME)

        logger.info(
            f"Experiment complete: {len(all_traces)} runs succeeded, {len(failures)} failed"
        )
        return ExperimentResult(
            traces=all_traces,
            failures=failures,
            summary=rows,
            trace_files=trace_files,
            summary_file=summary_file,
        )


def run_experiment(
    config: ExperimentConfig, progress_callback: Optional[ProgressCallback] = None
) -> ExperimentResult:
    """Run an experiment grid; see ExperimentService.run_experiment."""
    return ExperimentService(config).run_experiment(progress_callback)
