"""Input validation helpers shared by the functional API and the estimators."""

import math
import numbers

import numpy as np
from sklearn.utils import check_array


def check_positive(value, name, allow_inf=False):
    """Return ``value`` as float after checking it is > 0 (and finite unless allowed)."""
    if isinstance(value, str):
        value = math.inf if value.lower() in ("inf", "infinity") else float(value)
    if not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    value = float(value)
    if math.isnan(value) or value <= 0:
        raise ValueError(f"{name} must be > 0, got {value}")
    if math.isinf(value) and not allow_inf:
        raise ValueError(f"{name} must be finite")
    return value


def check_alpha(alpha, n):
    alpha = float(alpha)
    if not 0 < alpha < n:
        raise ValueError(f"alpha must lie in (0, n) = (0, {n}), got {alpha}")
    return alpha


def check_points(points, n):
    """Coerce evaluation points to a float array of shape (m, n)."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1 and n == 1:
        arr = arr[:, None]
    elif arr.ndim == 1 and arr.shape[0] == n:
        arr = arr[None, :]
    arr = check_array(arr, ensure_2d=True, dtype=float)
    if arr.shape[1] != n:
        raise ValueError(f"points must have {n} coordinates, got {arr.shape[1]}")
    return arr


def check_point(x, n):
    if x is None:
        return np.zeros(n)
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.shape != (n,):
        raise ValueError(f"point must have {n} coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    return arr
