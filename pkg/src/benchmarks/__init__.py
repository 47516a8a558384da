"""Benchmarks package"""
from .problem import BenchmarkProblem
from .branin import branin
from .hartmann import hartmann3, hartmann6
from .alpine import alpine1
from .gsobol import gsobol
from .regret import simple_regret
from .registry import get_problem, problem_names, register_problem

__all__ = [
    'BenchmarkProblem',
    'branin',
    'hartmann3',
    'hartmann6',
    'alpine1',
    'gsobol',
    'simple_regret',
    'get_problem',
    'problem_names',
    'register_problem',
]
