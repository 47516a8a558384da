"""
Experiment configuration for the benchmark harness.

An experiment is a problem, a list of methods and a list of declared
optimum values; every (method, declared f*) pair is a cell run R times.
Values come from command-line flags, a flat YAML file and the
environment, in that order of precedence.
"""
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, List, Mapping, Optional

import yaml

from src.acquisitions import AcquisitionKind
from src.benchmarks import get_problem, problem_names
from src.core.config import Settings, settings
from src.core.exceptions import ConfigParseException, ConfigurationException, UsageException
from src.surrogates.transformed_gp import PriorMeanMode, SurrogateKind

CONFIG_KEYS = (
    "problem",
    "methods",
    "iterations",
    "n_init",
    "repetitions",
    "seed",
    "f_star_declared",
    "delta",
    "output_dir",
    "m0_mode",
    "workers",
)

# Spellings accepted in config files in addition to CONFIG_KEYS.
KEY_ALIASES = {
    "method": "methods",
    "iters": "iterations",
    "reps": "repetitions",
    "fstar_declared": "f_star_declared",
    "fstar-declared": "f_star_declared",
    "n-init": "n_init",
    "output-dir": "output_dir",
}

DEFAULTS = {
    "methods": ["erm-tgp"],
    "iterations": 40,
    "n_init": None,
    "repetitions": 1,
    "seed": 0,
    "f_star_declared": None,
    "delta": None,
    "m0_mode": PriorMeanMode.SQRT2FSTAR.value,
    "workers": None,
}


@dataclass(frozen=True)
class MethodSpec:
    """An acquisition paired with the surrogate it runs on."""
    acquisition: AcquisitionKind
    surrogate: SurrogateKind

    @property
    def name(self) -> str:
        return f"{self.acquisition.value}-{self.surrogate.value}"

    def to_dict(self) -> dict:
        return {"acquisition": self.acquisition.value, "surrogate": self.surrogate.value}

    @classmethod
    def from_dict(cls, data: dict) -> "MethodSpec":
        return cls(AcquisitionKind(data["acquisition"]), SurrogateKind(data["surrogate"]))


METHOD_NAMES = [
    f"{acq.value}-{sur.value}" for acq in AcquisitionKind for sur in SurrogateKind
]


def parse_method(name: str) -> MethodSpec:
    """Parse ``<acquisition>-<surrogate>``.

    Raises:
        UsageException: If the name is not a registered method
    """
    key = str(name).strip().lower()
    if key not in METHOD_NAMES:
        raise UsageException(
            f"Unknown method '{name}'. Valid methods: {', '.join(METHOD_NAMES)}",
            {"available": list(METHOD_NAMES)},
        )
    acq, sur = key.rsplit("-", 1)
    return MethodSpec(AcquisitionKind(acq), SurrogateKind(sur))


@dataclass
class ExperimentConfig:
    """Everything needed to run one experiment grid."""
    problem: str
    methods: List[MethodSpec]
    f_star_declared: List[float]
    iterations: int = 40
    n_init: Optional[int] = None
    repetitions: int = 1
    seed: int = 0
    delta: float = field(default_factory=lambda: settings.beta_delta)
    output_dir: str = field(default_factory=lambda: settings.output_dir)
    m0_mode: PriorMeanMode = PriorMeanMode.SQRT2FSTAR
    workers: int = field(default_factory=lambda: settings.max_workers)

    def __post_init__(self):
        if not self.methods:
            raise ConfigurationException("At least one method is required")
        if not self.f_star_declared:
            raise ConfigurationException("At least one declared f* is required")
        if any(not math.isfinite(v) for v in self.f_star_declared):
            raise ConfigurationException("Declared f* values must be finite")
        if self.repetitions < 1:
            raise ConfigurationException(f"repetitions must be >= 1, got {self.repetitions}")
        if self.iterations < 0:
            raise ConfigurationException(f"iterations must be >= 0, got {self.iterations}")
        if self.n_init is not None and self.n_init < 2:
            raise ConfigurationException(f"n_init must be >= 2, got {self.n_init}")
        if not 0 < self.delta < 1:
            raise ConfigurationException(f"delta must lie in (0, 1), got {self.delta}")
        if self.workers < 1:
            raise ConfigurationException(f"workers must be >= 1, got {self.workers}")

    @property
    def cells(self) -> list[tuple[MethodSpec, float]]:
        return [(m, f) for m in self.methods for f in self.f_star_declared]

    @property
    def output_path(self) -> Path:
        return Path(self.output_dir)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["methods"] = [m.name for m in self.methods]
        data["m0_mode"] = self.m0_mode.value
        return data


def _split_list(value: Any) -> list:
    if isinstance(value, (list, tuple)):
        items = []
        for v in value:
            items.extend(_split_list(v))
        return items
    if isinstance(value, str):
        return [s.strip() for s in value.split(",") if s.strip()]
    return [value]


def _as_int(key: str, value: Any) -> int:
    if isinstance(value, bool):
        raise UsageException(f"'{key}' must be an integer, got {value!r}")
    try:
        as_float = float(value)
    except (TypeError, ValueError):
        raise UsageException(f"'{key}' must be an integer, got {value!r}")
    if not as_float.is_integer():
        raise UsageException(f"'{key}' must be an integer, got {value!r}")
    return int(as_float)


def _as_float(key: str, value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise UsageException(f"'{key}' must be a number, got {value!r}")


def _canonical_keys(data: Mapping[str, Any], source: str) -> dict:
    out = {}
    for raw_key, value in data.items():
        key = KEY_ALIASES.get(str(raw_key), str(raw_key))
        if key not in CONFIG_KEYS:
            raise UsageException(
                f"Unknown key '{raw_key}' in {source}. Valid keys: {', '.join(CONFIG_KEYS)}",
                {"available": list(CONFIG_KEYS)},
            )
        out[key] = value
    return out


def load_config_file(config_path: str | Path) -> dict:
    """Read a flat YAML mapping of experiment keys.

    Raises:
        UsageException: If the file is missing
        ConfigParseException: If the YAML is malformed or not a flat mapping
    """
    path = Path(config_path)
    if not path.exists():
        raise UsageException(f"Config file not found: {config_path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            column = mark.column + 1 if mark is not None else None
            problem = getattr(e, "problem", None) or str(e)
            raise ConfigParseException(f"Malformed config file {path}: {problem}", line, column)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigParseException(f"Config file {path} must hold a key-value mapping", line=1, column=1)
    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigParseException(f"Config key '{key}' in {path} must not be nested")
    return _canonical_keys(data, str(path))


def parse_config(
    flags: Optional[Mapping[str, Any]] = None,
    config_file: Optional[str | Path] = None,
) -> ExperimentConfig:
    """Merge flags, config file, environment and defaults into an ExperimentConfig.

    Args:
        flags: Values given on the command line; ``None`` entries count as absent
        config_file: Optional flat YAML file

    Raises:
        UsageException: Unknown key, problem or method, or an ill-typed value
        ConfigParseException: Malformed config file
    """
    given = _canonical_keys({k: v for k, v in (flags or {}).items() if v is not None}, "flags")
    from_file = load_config_file(config_file) if config_file is not None else {}
    merged = {**DEFAULTS, **from_file, **given}

    if "output_dir" not in given and "output_dir" not in from_file:
        # Fresh settings so OUTPUT_DIR set after import is honored.
        merged["output_dir"] = Settings().output_dir

    if not merged.get("problem"):
        raise UsageException(
            f"No problem given. Available problems: {', '.join(problem_names())}",
            {"available": problem_names()},
        )
    problem = get_problem(str(merged["problem"]))

    methods = []
    for name in _split_list(merged["methods"]):
        spec = parse_method(name)
        if spec not in methods:
            methods.append(spec)

    if merged["f_star_declared"] is None:
        f_stars = [problem.f_true_star]
    else:
        f_stars = [_as_float("f_star_declared", v) for v in _split_list(merged["f_star_declared"])]

    try:
        m0_mode = PriorMeanMode(str(getattr(merged["m0_mode"], "value", merged["m0_mode"])).lower())
    except ValueError:
        raise UsageException(
            f"Unknown m0_mode '{merged['m0_mode']}'. Valid modes: "
            f"{', '.join(m.value for m in PriorMeanMode)}"
        )

    optional = {}
    if merged["delta"] is not None:
        optional["delta"] = _as_float("delta", merged["delta"])
    if merged["workers"] is not None:
        optional["workers"] = _as_int("workers", merged["workers"])

    try:
        return ExperimentConfig(
            problem=problem.name if ":" not in str(merged["problem"]) else str(merged["problem"]),
            methods=methods,
            f_star_declared=f_stars,
            iterations=_as_int("iterations", merged["iterations"]),
            n_init=None if merged["n_init"] is None else _as_int("n_init", merged["n_init"]),
            repetitions=_as_int("repetitions", merged["repetitions"]),
            seed=_as_int("seed", merged["seed"]),
            output_dir=str(merged["output_dir"]),
            m0_mode=m0_mode,
            **optional,
        )
    except ConfigurationException as e:
        raise UsageException(e.message, e.details) from e

