import json

import pytest

from src.benchmarks import BenchmarkProblem, register_problem
from src.config.experiment import ExperimentConfig, parse_method
from src.core.exceptions import UsageException
from src.report.summary import summarize_directory
from src.report.traces import read_trace_file, trace_filename
from src.services import ExperimentService, run_experiment
from src.services.experiment_service import FAILURES_FILENAME, REPORT_FILENAME


def _parabola():
    return BenchmarkProblem(
        name="parabola-1d",
        dim=1,
        bounds=((0.0, 1.0),),
        evaluate=lambda x: -float((x[0] - 0.6) ** 2),
        f_true_star=0.0,
    )


def _crashing():
    def evaluate(x):
        raise RuntimeError("simulator offline")

    return BenchmarkProblem(name="crashing-1d", dim=1, bounds=((0.0, 1.0),), evaluate=evaluate, f_true_star=0.0)


register_problem("parabola-1d", _parabola)
register_problem("crashing-1d", _crashing)


def _config(output_dir, problem="parabola-1d", **overrides):
    kwargs = dict(
        problem=problem,
        methods=[parse_method("ei-gp"), parse_method("erm-tgp")],
        f_star_declared=[0.0],
        iterations=3,
        n_init=2,
        repetitions=3,
        seed=5,
        output_dir=str(output_dir),
        workers=2,
    )
    kwargs.update(overrides)
    return ExperimentConfig(**kwargs)


def test_grid_runs_every_cell(tmp_path):
    calls = []
    result = run_experiment(_config(tmp_path), progress_callback=lambda c, t, d: calls.append((c, t)))

    assert result.exit_code == 0
    assert result.total_runs == 6
    assert len(result.trace_files) == 2
    assert calls[-1] == (6, 6)
    assert sorted(p.name for p in result.trace_files) == sorted(
        trace_filename(m, 0.0) for m in ("ei-gp", "erm-tgp")
    )
    for path in result.trace_files:
        runs = read_trace_file(path)
        assert sorted(runs) == [0, 1, 2]
        assert [runs[i][0].seed for i in range(3)] == [5, 6, 7]
    assert (tmp_path / REPORT_FILENAME).exists()
    assert not (tmp_path / FAILURES_FILENAME).exists()


def test_reruns_are_byte_identical(tmp_path):
    first = run_experiment(_config(tmp_path / "a", workers=3))
    run_experiment(_config(tmp_path / "b", workers=1))
    for path in [*first.trace_files, first.summary_file, tmp_path / "a" / REPORT_FILENAME]:
        assert path.read_bytes() == (tmp_path / "b" / path.name).read_bytes()


def test_summary_matches_trace_files(tmp_path):
    result = run_experiment(_config(tmp_path))
    rows, _ = summarize_directory(tmp_path)
    assert rows == result.summary


def test_run_seeds_follow_base_seed(tmp_path):
    service = ExperimentService(_config(tmp_path, seed=11, repetitions=2))
    tasks = service.tasks()
    assert [t.seed for t in tasks] == [11, 12, 11, 12]
    bo = service.bo_config(tasks[1])
    assert bo.seed == 12
    assert bo.run_id == 1
    assert bo.f_star_true == 0.0


def test_failed_runs_are_collected(tmp_path):
    result = run_experiment(_config(tmp_path, problem="crashing-1d", methods=[parse_method("ei-gp")]))

    assert result.exit_code == 1
    assert len(result.failures) == 3
    assert result.trace_files == []
    failures = json.loads((tmp_path / FAILURES_FILENAME).read_text(encoding="utf-8"))
    assert [f["run_id"] for f in failures] == [0, 1, 2]
    assert {f["error_type"] for f in failures} == {"ObjectiveException"}
    assert "Failed runs" in (tmp_path / REPORT_FILENAME).read_text(encoding="utf-8")


def test_stale_failures_file_is_removed(tmp_path):
    (tmp_path / FAILURES_FILENAME).write_text("[]", encoding="utf-8")
    run_experiment(_config(tmp_path, repetitions=1, methods=[parse_method("ei-gp")]))
    assert not (tmp_path / FAILURES_FILENAME).exists()


def test_unknown_problem_is_rejected_before_running(tmp_path):
    with pytest.raises(UsageException):
        ExperimentService(_config(tmp_path, problem="nope"))


def test_stale_trace_files_are_removed(tmp_path):
    run_experiment(_config(tmp_path, methods=[parse_method("cbm-tgp")], repetitions=1))
    old = tmp_path / trace_filename("cbm-tgp", 0.0)
    assert old.exists()

    result = run_experiment(_config(tmp_path, methods=[parse_method("ei-gp")], repetitions=1))
    assert not old.exists()
    assert [p.name for p in tmp_path.glob("trace__*.csv")] == [trace_filename("ei-gp", 0.0)]
    rows, _ = summarize_directory(tmp_path)
    assert {r.method for r in rows} == {"ei-gp"}
    assert rows == result.summary
