"""
Command-line experiment runner.

Subcommands:
    run        run an experiment grid and write traces, summary and report
    summarize  re-aggregate the trace files of an output directory
    list       show registered problems and methods

Exit codes: 0 success, 1 some run failed, 2 usage error.
"""
import argparse
import sys
from typing import Optional, Sequence

from src.benchmarks import get_problem, problem_names
from src.config.experiment import METHOD_NAMES, parse_config
from src.core.config import settings
from src.core.exceptions import UsageException
from src.core.logging import get_logger, setup_logging
from src.report.summary import summarize_directory
from src.services.experiment_service import FAILURES_FILENAME, ExperimentService
from src.utils.progress import ProgressDisplay

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_RUN_FAILED = 1
EXIT_USAGE = 2

# argparse dest -> experiment config key
_FLAG_KEYS = {
    "problem": "problem",
    "method": "methods",
    "iters": "iterations",
    "n_init": "n_init",
    "reps": "repetitions",
    "seed": "seed",
    "fstar_declared": "f_star_declared",
    "delta": "delta",
    "output_dir": "output_dir",
    "m0_mode": "m0_mode",
    "workers": "workers",
}


def flags_from_args(args: argparse.Namespace) -> dict:
    """Config values given on the command line; absent flags are left out."""
    return {
        key: getattr(args, dest)
        for dest, key in _FLAG_KEYS.items()
        if getattr(args, dest, None) is not None
    }


def cmd_run(args: argparse.Namespace, display: ProgressDisplay) -> int:
    config = parse_config(flags_from_args(args), args.config)
    service = ExperimentService(config)
    total = len(service.tasks())
    display.print_header(
        f"{settings.app_name}: {service.problem.name}, "
        f"{', '.join(m.name for m in config.methods)}"
    )
    with display.progress_context(total, description="Running"):
        result = service.run_experiment(progress_callback=display.on_run_complete)

    display.print_regret_table([r for r in result.summary if r.is_final], str(config.output_path))
    if result.failures:
        display.print_warning(
            f"{len(result.failures)} of {result.total_runs} runs failed; see {config.output_path / FAILURES_FILENAME}"
        )
    else:
        display.print_success(f"{result.total_runs} runs completed")
    return result.exit_code


def cmd_summarize(args: argparse.Namespace, display: ProgressDisplay) -> int:
    rows, path = summarize_directory(args.directory)
    display.print_regret_table([r for r in rows if r.is_final], args.directory)
    display.print_success(f"Wrote {path}")
    return EXIT_OK


def cmd_list(args: argparse.Namespace, display: ProgressDisplay) -> int:
    display.print_listing([get_problem(name) for name in problem_names()], METHOD_NAMES)
    display.print_info("Also: alpine1-<d>, gsobol-<d>, or package.module:factory")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knownopt",
        description="Bayesian optimization with a known optimum value: benchmark harness",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run an experiment grid")
    run.add_argument("--problem", help="Benchmark name, e.g. branin, hartmann3, gsobol-5")
    run.add_argument(
        "--method", action="append",
        help="Method <acquisition>-<surrogate>; repeat or comma-separate",
    )
    run.add_argument("--iters", type=int, help="BO iterations after the initial design")
    run.add_argument("--n-init", dest="n_init", type=int, help="Initial design size (default 3*d)")
    run.add_argument("--reps", type=int, help="Runs per cell")
    run.add_argument("--seed", type=int, help="Base seed; run i uses seed+i")
    run.add_argument(
        "--fstar-declared", dest="fstar_declared",
        help="Comma-separated declared optimum values (default: the true f*)",
    )
    run.add_argument("--delta", type=float, help="Confidence parameter of the beta schedule")
    run.add_argument("--m0-mode", dest="m0_mode", choices=["zero", "sqrt2fstar"])
    run.add_argument("--output-dir", dest="output_dir", help="Output directory (env OUTPUT_DIR)")
    run.add_argument("--workers", type=int, help="Parallel runs")
    run.add_argument("--config", default=None, help="Flat YAML experiment file")
    run.set_defaults(handler=cmd_run)

    summ = sub.add_parser("summarize", help="Re-aggregate trace files in a directory")
    summ.add_argument("directory")
    summ.set_defaults(handler=cmd_summarize)

    lst = sub.add_parser("list", help="List problems and methods")
    lst.set_defaults(handler=cmd_list)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    display = ProgressDisplay()
    try:
        return args.handler(args, display)
    except UsageException as e:
        display.print_error(e.message)
        logger.debug(f"Usage error: {e.message}", extra={"context": e.details})
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
