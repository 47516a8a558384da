from pathlib import Path

import pytest

from src.acquisitions import AcquisitionKind
from src.cli import build_parser, flags_from_args
from src.config.experiment import (
    METHOD_NAMES,
    MethodSpec,
    load_config_file,
    parse_config,
    parse_method,
)
from src.core.exceptions import ConfigParseException, UsageException
from src.surrogates.transformed_gp import PriorMeanMode, SurrogateKind


def _flags(*argv):
    return flags_from_args(build_parser().parse_args(["run", *argv]))


def _write(tmp_path, text, name="experiment.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_flags_map_to_config():
    config = parse_config(_flags(
        "--problem", "branin", "--method", "erm-tgp", "--iters", "40", "--reps", "10", "--seed", "7",
    ))
    assert config.problem == "branin"
    assert config.methods == [MethodSpec(AcquisitionKind.ERM, SurrogateKind.TGP)]
    assert config.iterations == 40
    assert config.repetitions == 10
    assert config.seed == 7


def test_flag_beats_file(tmp_path):
    path = _write(tmp_path, "problem: branin\nreps: 20\nseed: 3\n")
    config = parse_config(_flags("--reps", "5"), path)
    assert config.repetitions == 5
    assert config.seed == 3


def test_file_beats_defaults(tmp_path):
    path = _write(tmp_path, "problem: hartmann3\nmethods: [ei-gp, cbm-tgp]\niterations: 12\n")
    config = parse_config({}, path)
    assert [m.name for m in config.methods] == ["ei-gp", "cbm-tgp"]
    assert config.iterations == 12
    assert config.m0_mode is PriorMeanMode.SQRT2FSTAR


def test_declared_optimum_defaults_to_true_value():
    config = parse_config({"problem": "hartmann3"})
    assert config.f_star_declared == [pytest.approx(3.86278)]


def test_declared_optimum_sweep():
    config = parse_config({"problem": "branin", "f_star_declared": "-0.397887, 0, -5"})
    assert config.f_star_declared == [-0.397887, 0.0, -5.0]
    assert len(config.cells) == 3


def test_repeated_and_comma_separated_methods():
    config = parse_config(_flags("--problem", "branin", "--method", "ei-gp,erm-tgp", "--method", "ei-gp"))
    assert [m.name for m in config.methods] == ["ei-gp", "erm-tgp"]


def test_bogus_method_lists_valid_names():
    with pytest.raises(UsageException) as exc:
        parse_config({"problem": "branin", "methods": "bogus-gp"})
    assert exc.value.details["available"] == METHOD_NAMES


def test_unknown_problem():
    with pytest.raises(UsageException) as exc:
        parse_config({"problem": "rastrigin"})
    assert "branin" in exc.value.details["available"]


def test_missing_problem():
    with pytest.raises(UsageException):
        parse_config({})


def test_unknown_file_key(tmp_path):
    path = _write(tmp_path, "problem: branin\nbudget: 10\n")
    with pytest.raises(UsageException, match="budget"):
        parse_config({}, path)


def test_malformed_file_reports_line(tmp_path):
    path = _write(tmp_path, "problem: branin\niterations: 10\nmethods: erm-tgp: ei-gp\n")
    with pytest.raises(ConfigParseException) as exc:
        load_config_file(path)
    assert exc.value.line == 3


def test_nested_file_value_is_rejected(tmp_path):
    path = _write(tmp_path, "problem: branin\nseed:\n  value: 3\n")
    with pytest.raises(ConfigParseException):
        load_config_file(path)


def test_missing_file(tmp_path):
    with pytest.raises(UsageException):
        parse_config({"problem": "branin"}, tmp_path / "absent.yaml")


def test_invalid_values_are_usage_errors():
    with pytest.raises(UsageException):
        parse_config({"problem": "branin", "repetitions": 0})
    with pytest.raises(UsageException):
        parse_config({"problem": "branin", "iterations": "many"})
    with pytest.raises(UsageException):
        parse_config({"problem": "branin", "m0_mode": "mean"})


def test_output_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("OUTPUT_DIR", str(tmp_path / "from_env"))
    assert parse_config({"problem": "branin"}).output_dir == str(tmp_path / "from_env")
    flagged = parse_config({"problem": "branin", "output_dir": str(tmp_path / "flag")})
    assert flagged.output_dir == str(tmp_path / "flag")


def test_parse_method_aliases():
    assert parse_method("ERM-TGP") == MethodSpec(AcquisitionKind.ERM, SurrogateKind.TGP)
    assert parse_method("ei_star-gp").acquisition is AcquisitionKind.EI_STAR
    assert MethodSpec.from_dict(parse_method("cbm-gp").to_dict()).name == "cbm-gp"



def test_example_config_file_parses():
    config = parse_config({}, Path(__file__).resolve().parent.parent / "config.yaml")
    assert config.problem == "hartmann3"
    assert [m.name for m in config.methods] == ["erm-tgp", "cbm-tgp", "ei-gp"]
    assert config.f_star_declared == [3.86278, 6.0, 2.0]
