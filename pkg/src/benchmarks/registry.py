"""
Benchmark registry: name -> problem factory.

Names resolve in this order: registered names, parametrized families
(``alpine1-<d>``, ``gsobol-<d>``), then ``package.module:factory`` plug-ins
whose factory returns a BenchmarkProblem.
"""
import importlib
import re
import threading
from typing import Callable

from src.core.exceptions import UsageException
from src.core.logging import get_logger
from .alpine import alpine1
from .branin import branin
from .gsobol import gsobol
from .hartmann import hartmann3, hartmann6
from .problem import BenchmarkProblem

logger = get_logger(__name__)

ProblemFactory = Callable[[], BenchmarkProblem]

_FAMILIES: dict[str, Callable[[int], BenchmarkProblem]] = {
    "alpine1": alpine1,
    "gsobol": gsobol,
}
_FAMILY_PATTERN = re.compile(r"^(?P<family>[a-z0-9]+)-(?P<dim>\d+)$")
_PLUGIN_PATTERN = re.compile(r"^(?P<module>[\w.]+):(?P<attr>\w+)$")

_lock = threading.Lock()
_registry: dict[str, ProblemFactory] = {
    "branin": branin,
    "hartmann3": hartmann3,
    "hartmann6": hartmann6,
    "alpine1-5": lambda: alpine1(5),
    "gsobol-5": lambda: gsobol(5),
    "gsobol-10": lambda: gsobol(10),
}


def register_problem(name: str, factory: ProblemFactory) -> None:
    """Register (or replace) a problem factory under ``name``."""
    with _lock:
        if name in _registry:
            logger.warning(f"Replacing registered problem {name!r}")
        _registry[name] = factory


def problem_names() -> list[str]:
    with _lock:
        return sorted(_registry)


def _load_plugin(module_name: str, attr: str) -> BenchmarkProblem:
    try:
        module = importlib.import_module(module_name)
        factory = getattr(module, attr)
    except (ImportError, AttributeError) as e:
        raise UsageException(
            f"Cannot load objective plug-in {module_name}:{attr}: {e}",
            {"plugin": f"{module_name}:{attr}"},
        )
    problem = factory()
    if not isinstance(problem, BenchmarkProblem):
        raise UsageException(
            f"Plug-in {module_name}:{attr} did not return a BenchmarkProblem",
            {"plugin": f"{module_name}:{attr}"},
        )
    return problem


def get_problem(name: str) -> BenchmarkProblem:
    """Resolve a problem by name.

    Raises:
        UsageException: If the name matches nothing; lists registered problems
    """
    key = name.strip()
    with _lock:
        factory = _registry.get(key.lower())
    if factory is not None:
        return factory()

    match = _FAMILY_PATTERN.match(key.lower())
    if match and match.group("family") in _FAMILIES and int(match.group("dim")) >= 1:
        return _FAMILIES[match.group("family")](int(match.group("dim")))

    match = _PLUGIN_PATTERN.match(key)
    if match:
        return _load_plugin(match.group("module"), match.group("attr"))

    available = problem_names()
    raise UsageException(
        f"Unknown problem {name!r}. Available: {', '.join(available)} "
        "(also alpine1-<d>, gsobol-<d>, or package.module:factory)",
        {"available": available},
    )
