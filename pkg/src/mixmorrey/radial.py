"""Log-spaced radial grids and the window-doubling divergence heuristic."""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_positive

MIN_RADII = 8

FINITE = "finite"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RadialGrid:
    """Radii ``r_1 < ... < r_K`` with quadrature weights ``dr_k``.

    ``log_spaced`` places the radii at the geometric midpoints of
    log-uniform cells, so ``sum(dr)`` is exactly ``r_max - r_min``.
    """

    radii: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if r.ndim != 1 or r.shape != w.shape:
            raise ValueError("radii and weights must be 1-d arrays of equal length")
        if r.size < MIN_RADII:
            raise ValueError(f"a radial grid needs at least {MIN_RADII} radii, got {r.size}")
        if r[0] <= 0 or np.any(np.diff(r) <= 0):
            raise ValueError("radii must be positive and strictly increasing")
        if np.any(w < 0):
            raise ValueError("radial weights must be >= 0")
        r.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "weights", w)

    @classmethod
    def log_spaced(cls, r_min, r_max, k=64):
        r_min = check_positive(r_min, "r_min")
        r_max = check_positive(r_max, "r_max")
        if r_max <= r_min:
            raise ValueError(f"need r_min < r_max, got ({r_min}, {r_max})")
        edges = np.geomspace(r_min, r_max, k + 1)
        return cls(np.sqrt(edges[:-1] * edges[1:]), np.diff(edges))

    @property
    def r_min(self):
        return float(self.radii[0])

    @property
    def r_max(self):
        return float(self.radii[-1])

    def __len__(self):
        return self.radii.size


def doubling_verdict(values, growth=2.0, rtol=1e-6):
    """Classify a sequence of truncated integrals over growing windows.

    Two consecutive growth factors of at least ``growth`` mean the integral
    diverges; a last relative increment below ``rtol`` means it converged.
    Anything else is inconclusive.
    """
    v = [float(x) for x in values]
    if any(math.isinf(x) for x in v):
        return DIVERGENT
    if len(v) < 2:
        return INCONCLUSIVE
    ratios = [b / a if a > 0 else (math.inf if b > 0 else 1.0) for a, b in zip(v[:-1], v[1:])]
    if len(ratios) >= 2 and ratios[-1] >= growth and ratios[-2] >= growth:
        return DIVERGENT
    last, prev = v[-1], v[-2]
    if last == prev or (last > 0 and abs(last - prev) <= rtol * last):
        return FINITE
    return INCONCLUSIVE


__all__ = ["RadialGrid", "doubling_verdict", "FINITE", "DIVERGENT", "INCONCLUSIVE"]
