"""Iterated mixed Lebesgue norms and the Hoelder/Minkowski/differentiation checks.

The mixed norm takes the ``p_1``-norm in ``x_1`` first, then the
``p_2``-norm in ``x_2`` and so on. Grid samples are indexed with ``x_1`` on
axis 0, so every reduction acts on axis 0 of what is left.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import Cube, CubeComplement, Annulus, ExponentVector, GridSpec, restrict, sample
from .exceptions import InsufficientSupportError, UnderResolvedError

MIDPOINT_ORDER = 2


def iterated_norm(values, exponents, h):
    """Mixed norm of a sample array with uniform spacing ``h``; axis 0 first."""
    a = np.abs(np.asarray(values, dtype=float))
    for p in exponents:
        if a.size == 0:
            return 0.0
        if math.isinf(p):
            a = a.max(axis=0)
        else:
            a = (np.sum(a ** p, axis=0) * h) ** (1.0 / p)
    return float(a)


def scalar_lp_norm(values, p, cell_volume):
    """Plain ``L_p`` norm of all samples at once; the oracle for equal exponents."""
    a = np.abs(np.asarray(values, dtype=float)).ravel()
    if math.isinf(p):
        return float(a.max()) if a.size else 0.0
    return float((np.sum(a ** p) * cell_volume) ** (1.0 / p))


def richardson(coarse, fine, order=MIDPOINT_ORDER, ratio=2):
    """Extrapolated value and the error estimates of ``coarse`` and ``fine``.

    Returns ``(extrapolated, coarse_error, fine_error)``.
    """
    err = (fine - coarse) / (ratio ** order - 1)
    return fine + err, abs(err) * ratio ** order, abs(err)


@dataclass(frozen=True)
class MixedNormResult:
    value: float
    exponents: ExponentVector
    region: object
    resolution: int
    richardson_error: float = None

    def __float__(self):
        return self.value

    def to_dict(self):
        return {
            "value": self.value,
            "exponents": [p if not math.isinf(p) else "inf" for p in self.exponents],
            "region": None if self.region is None else self.region.to_dict(),
            "resolution": self.resolution,
            "richardson_error": self.richardson_error,
        }


def _check_region(grid, region):
    if region is None or isinstance(region, CubeComplement):
        return
    cube = region.outer if isinstance(region, Annulus) else region
    if cube.n != grid.n:
        raise ValueError(f"region has dimension {cube.n}, function has {grid.n}")
    if not grid.box.covers(cube):
        raise InsufficientSupportError(
            f"insufficient support: region {cube.to_dict()} is not inside the box {grid.box.to_dict()}")


def _norm_value(f, p, region):
    g = f if region is None else restrict(f, region)
    return iterated_norm(g.samples, p.entries, f.grid.h)


def mixed_norm(f, p, region=None, richardson_check=False):
    """``||f||_{L_p(E)}`` by iterated midpoint sums.

    Parameters
    ----------
    f : GridFunction
    p : ExponentVector or sequence
        Per-axis exponents in ``(0, inf]``; entries below 1 give the
        quasi-norm by the same formula.
    region : Cube, CubeComplement or Annulus, optional
        Restrict to ``E`` before taking the norm.
    richardson_check : bool
        Recompute at twice the resolution from the analytic tag and attach
        the Richardson error estimate of the returned value.

    Returns
    -------
    MixedNormResult
    """
    p = ExponentVector.coerce(p, f.n)
    _check_region(f.grid, region)
    value = _norm_value(f, p, region)
    err = None
    if richardson_check:
        if f.analytic_tag is None:
            raise ValueError("a Richardson estimate needs an analytic tag to resample at 2x resolution")
        fine = sample(f.analytic_tag, f.grid.refined(2))
        _, err, _ = richardson(value, _norm_value(fine, p, region))
    return MixedNormResult(value, p, region, f.grid.points_per_axis, err)


def _check_same_grid(f, g):
    if f.grid != g.grid:
        raise ValueError("f and g must live on the same grid")


def holder_margin(f, g, p):
    """Both sides of Hoelder's inequality ``int |f g| <= ||f||_p ||g||_p'``."""
    _check_same_grid(f, g)
    p = ExponentVector.coerce(p, f.n)
    q = p.conjugate()
    lhs = float(np.sum(np.abs(f.samples * g.samples)) * f.grid.cell_volume)
    rhs = _norm_value(f, p, None) * _norm_value(g, q, None)
    return lhs, rhs


def three_factor_holder(f, g, p, q, r, tol=1e-12):
    """Both sides of ``||f g||_r <= ||f||_p ||g||_q`` when ``1/p + 1/q = 1/r``."""
    _check_same_grid(f, g)
    p, q, r = (ExponentVector.coerce(v, f.n) for v in (p, q, r))
    gap = np.abs(p.reciprocal() + q.reciprocal() - r.reciprocal())
    if np.any(gap > tol):
        raise ValueError(f"exponents violate 1/p + 1/q = 1/r (gap {gap.max():.3g})")
    lhs = iterated_norm(f.samples * g.samples, r.entries, f.grid.h)
    rhs = _norm_value(f, p, None) * _norm_value(g, q, None)
    return lhs, rhs


def minkowski_margin(f, g, p):
    """Both sides of ``||f + g||_p <= ||f||_p + ||g||_p``; needs every ``p_i >= 1``."""
    _check_same_grid(f, g)
    p = ExponentVector.coerce(p, f.n)
    if any(pi < 1 for pi in p):
        raise ValueError("the triangle inequality needs every exponent >= 1")
    lhs = iterated_norm(f.samples + g.samples, p.entries, f.grid.h)
    return lhs, _norm_value(f, p, None) + _norm_value(g, p, None)


def lebesgue_differentiation_profile(f, x, radii, p, min_cells=4):
    """Normalized local norms ``(2r)^(-sum 1/p) ||f||_{L_p(Q(x, r))}`` per radius.

    With an analytic tag each cube is resampled on its own grid at the
    resolution of ``f``; otherwise the cube is cut out of ``f``'s samples.
    Radii below ``min_cells`` grid cells are rejected.
    """
    p = ExponentVector.coerce(p, f.n)
    s = p.sum_reciprocal()
    x = tuple(np.atleast_1d(np.asarray(x, dtype=float)))
    out = []
    for r in radii:
        if r < min_cells * f.grid.h:
            raise UnderResolvedError(
                f"under-resolved: radius {r} is below {min_cells} grid cells (h = {f.grid.h})")
        cube = Cube(x, r)
        _check_region(f.grid, cube)
        if f.analytic_tag is not None:
            local = sample(f.analytic_tag, GridSpec(cube, f.grid.points_per_axis))
            value = iterated_norm(local.samples, p.entries, local.grid.h)
        else:
            value = _norm_value(f, p, cube)
        out.append((2.0 * r) ** -s * value)
    return out


__all__ = [
    "MixedNormResult", "mixed_norm", "iterated_norm", "scalar_lp_norm", "richardson",
    "holder_margin", "three_factor_holder", "minkowski_margin",
    "lebesgue_differentiation_profile",
]
