"""Utilities package"""
from .progress import ProgressDisplay

__all__ = ['ProgressDisplay']
