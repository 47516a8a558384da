"""Core configuration and utilities."""
from .config import settings
from .logging import setup_logging, get_logger
from .exceptions import (
    KnownOptException,
    ContractViolation,
    FitException,
    SelectionException,
    KnownOptimumViolated,
    ConfigurationException,
    ObjectiveException,
    UsageException,
    ConfigParseException,
)

__all__ = [
    "settings",
    "setup_logging",
    "get_logger",
    "KnownOptException",
    "ContractViolation",
    "FitException",
    "SelectionException",
    "KnownOptimumViolated",
    "ConfigurationException",
    "ObjectiveException",
    "UsageException",
    "ConfigParseException",
]
