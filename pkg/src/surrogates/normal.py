"""Scalar standard-normal utilities shared by every acquisition function."""
import numpy as np
from numpy.typing import ArrayLike
from scipy.special import log_ndtr, ndtr

_INV_SQRT_2PI = 0.3989422804014327


def _unbox(value: np.ndarray) -> float | np.ndarray:
    return float(value) if np.ndim(value) == 0 else value


def std_normal_pdf(z: ArrayLike) -> float | np.ndarray:
    """Standard normal density, exp(-z^2/2)/sqrt(2*pi)."""
    z = np.asarray(z, dtype=float)
    return _unbox(_INV_SQRT_2PI * np.exp(-0.5 * z * z))


def std_normal_cdf(z: ArrayLike) -> float | np.ndarray:
    """Standard normal c.d.f. evaluated through the complementary error function."""
    return _unbox(ndtr(np.asarray(z, dtype=float)))


def std_normal_logcdf(z: ArrayLike) -> float | np.ndarray:
    """log of the standard normal c.d.f., accurate deep in the lower tail."""
    return _unbox(log_ndtr(np.asarray(z, dtype=float)))
