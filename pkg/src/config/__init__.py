"""Configuration module for experiments."""
from .experiment import ExperimentConfig, MethodSpec, METHOD_NAMES, parse_config, parse_method

__all__ = ['ExperimentConfig', 'MethodSpec', 'METHOD_NAMES', 'parse_config', 'parse_method']
