"""Fractional integral, fractional maximal, partial and Hardy operators.

``I_alpha`` is a direct midpoint sum over the nonzero source cells. The cell
that strictly contains the evaluation point has an infinite midpoint term
and is handled by a rule: ``exclude`` drops it, ``ball_equivalent`` replaces
it by the kernel integral over the ball of the same volume. Optionally the
cells within ``near_field`` layers of ``x`` use the exact cell integral of
the kernel instead (piecewise-constant ``f``).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.signal import fftconvolve

from ._validation import check_alpha, check_point, check_points, check_positive
from .core import Cube, GridFunction, GridSpec, sample
from .mixed_norm import richardson
from .morrey import shell_profile
from ._powers import power_sup
from .radial import RadialGrid

SINGULAR_RULES = ("exclude", "ball_equivalent")
CHUNK_ENTRIES = 2_000_000
GAUSS_POINTS = 24
GRADED_NODES = 64


@dataclass(frozen=True)
class FractionalKernelSpec:
    """Kernel ``|x - y|^(alpha - n)`` with its singular-cell treatment."""

    alpha: float
    n: int
    singular_cell_rule: str = "ball_equivalent"
    near_field: int = 0

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError(f"n must be 1, 2 or 3, got {self.n}")
        object.__setattr__(self, "alpha", check_alpha(self.alpha, self.n))
        if self.singular_cell_rule not in SINGULAR_RULES:
            raise ValueError(f"singular_cell_rule must be one of {SINGULAR_RULES}")
        if int(self.near_field) != self.near_field or self.near_field < 0:
            raise ValueError("near_field must be a nonnegative integer")

    def ball_term(self, h):
        """``int_B |y|^(alpha - n) dy`` over the ball of volume ``h^n``."""
        n, a = self.n, self.alpha
        rho = (h ** n * math.gamma(n / 2 + 1) / math.pi ** (n / 2)) ** (1.0 / n)
        surface = 2 * math.pi ** (n / 2) / math.gamma(n / 2)
        return surface * rho ** a / a


# ---------------------------------------------------------------------------
# exact kernel integrals over cells


def _corner_integral(c, alpha):
    """``int_{[0, c_1] x ... x [0, c_n]} |y|^(alpha - n) dy`` for ``c >= 0``.

    The box ``[0, c]`` minus ``[0, c/2]`` stays away from the singularity
    and scaling gives ``G(c/2) = 2^(-alpha) G(c)``, hence
    ``G(c) = S / (1 - 2^(-alpha))`` with ``S`` from Gauss-Legendre.
    """
    n = len(c)
    if min(c) == 0:
        return 0.0
    if n == 1:
        return c[0] ** alpha / alpha
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    total = 0.0
    for upper in np.ndindex(*(2,) * n):
        if not any(upper):
            continue
        grids, wts = [], []
        for ci, u in zip(c, upper):
            a, b = (ci / 2, ci) if u else (0.0, ci / 2)
            grids.append(0.5 * (b - a) * nodes + 0.5 * (a + b))
            wts.append(0.5 * (b - a) * weights)
        mesh = np.meshgrid(*grids, indexing="ij")
        r = np.sqrt(sum(m ** 2 for m in mesh))
        w = wts[0]
        for extra in wts[1:]:
            w = np.multiply.outer(w, extra)
        total += float(np.sum(w * r ** (alpha - n)))
    return total / (1 - 2.0 ** -alpha)


class _CellIntegralCache:
    """Exact ``int_cell |x - y|^(alpha - n) dy`` in units of the cell size."""

    def __init__(self, alpha, n):
        self.alpha, self.n = alpha, n
        self._corner = {}
        self._cell = {}

    def corner(self, c):
        key = tuple(round(v, 9) for v in c)
        if key not in self._corner:
            self._corner[key] = _corner_integral(key, self.alpha)
        return self._corner[key]

    def unit_cell(self, u):
        """Integral over the unit cell centered at offset ``u`` from the singularity."""
        key = tuple(round(float(v), 9) for v in u)
        if key in self._cell:
            return self._cell[key]
        total = 0.0
        for ends in np.ndindex(*(2,) * self.n):
            corner = [k - 0.5 if e == 0 else k + 0.5 for k, e in zip(key, ends)]
            sign = (-1) ** (self.n - sum(ends))
            for v in corner:
                sign *= np.sign(v)
            if sign:
                total += sign * self.corner([abs(v) for v in corner])
        self._cell[key] = total
        return total


_CACHES = {}


def _cell_cache(alpha, n):
    key = (alpha, n)
    if key not in _CACHES:
        _CACHES[key] = _CellIntegralCache(alpha, n)
    return _CACHES[key]


def _unit_cells_1d(u, alpha):
    """Vectorised 1-d cell integrals ``int_{u-1/2}^{u+1/2} |y|^(alpha-1) dy``."""
    def anti(v):
        return np.sign(v) * np.abs(v) ** alpha / alpha
    return anti(u + 0.5) - anti(u - 0.5)


# ---------------------------------------------------------------------------
# fractional integral


def _sources(f, mask=None):
    vals = np.abs(f.samples) if mask == "abs" else f.samples
    pts = f.grid.points().reshape(-1, f.n)
    vals = vals.ravel()
    keep = vals != 0
    return pts[keep], vals[keep]


def _check_inside(points, grid):
    lo, hi = grid.box.bounds()
    if np.any(points < lo - 1e-12) or np.any(points > hi + 1e-12):
        raise ValueError("evaluation points must lie inside the box of f")


def _kernel_weights(diff, spec, h):
    """Quadrature weight of a source cell at offset ``diff = y - x``."""
    n, alpha = spec.n, spec.alpha
    tol = 1e-9 * h
    cheb = np.abs(diff).max(axis=-1)
    r = np.sqrt(np.sum(diff ** 2, axis=-1))
    with np.errstate(divide="ignore"):
        kern = np.where(r > 0, r, 1.0) ** (alpha - n) * h ** n
    near = spec.near_field
    if near:
        close = cheb < (near + 0.5) * h - tol
        u = diff[close] / h
        if n == 1:
            exact = _unit_cells_1d(u[:, 0], alpha)
        else:
            cache = _cell_cache(alpha, n)
            keys, inverse = np.unique(np.round(u, 9), axis=0, return_inverse=True)
            exact = np.array([cache.unit_cell(v) for v in keys])[inverse.ravel()]
        kern[close] = exact * h ** alpha
    else:
        singular = cheb < h / 2 - tol
        kern[singular] = 0.0 if spec.singular_cell_rule == "exclude" else spec.ball_term(h)
    return kern


def _riesz_sum(ys, vals, points, spec, h):
    out = np.zeros(points.shape[0])
    if vals.size == 0:
        return out
    chunk = max(1, CHUNK_ENTRIES // vals.size)
    for start in range(0, points.shape[0], chunk):
        x = points[start:start + chunk]
        out[start:start + chunk] = _kernel_weights(ys[None, :, :] - x[:, None, :], spec, h) @ vals
    return out


def _lattice_offset(target, grid):
    """Index of ``target``'s first midpoint in ``grid``'s lattice, or None if not aligned."""
    if not math.isclose(target.h, grid.h, rel_tol=1e-12):
        return None
    lo_t, _ = target.box.bounds()
    lo_g, _ = grid.box.bounds()
    idx = (np.asarray(lo_t) - np.asarray(lo_g)) / grid.h
    k = np.rint(idx)
    if not np.allclose(idx, k, atol=1e-9, rtol=0):
        return None
    return k.astype(int)


def _riesz_fft(samples, offset, target, spec, h):
    """``I_alpha`` on an aligned target grid as one FFT convolution.

    Every target midpoint is a source-lattice point, so the weight of a
    source depends only on the integer offset; the weights are tabulated
    with :func:`_kernel_weights` over all offsets that occur.
    """
    n, size, m = spec.n, samples.shape[0], target.points_per_axis
    lo = int(-(offset.max() + m - 1))
    hi = int(size - 1 - offset.min())
    d = np.arange(lo, hi + 1) * h
    mesh = np.stack(np.meshgrid(*([d] * n), indexing="ij"), axis=-1)
    table = _kernel_weights(mesh, spec, h)
    full = fftconvolve(samples, table[(slice(None, None, -1),) * n], mode="full")
    # full[i + hi] holds sum_s samples[s] * table(s - i) for target lattice index i
    start = [int(o) + hi for o in offset]
    sl = tuple(slice(s0, s0 + m) for s0 in start)
    return full[sl]


def inner_points(grid):
    """Grid over the inner half of ``grid.box`` with the same spacing."""
    return GridSpec(Cube(grid.box.center, grid.box.half_side / 2), max(2, grid.points_per_axis // 2))


def fractional_integral(f, spec, eval_points=None, absolute=False, method="auto"):
    """``I_alpha f(x) = int f(y) |x - y|^(alpha - n) dy`` by midpoint sums.

    Parameters
    ----------
    f : GridFunction
        Source, taken as zero outside its box.
    spec : FractionalKernelSpec
    eval_points : GridSpec or array of shape (m, n), optional
        Where to evaluate. Defaults to the midpoints in the inner half of
        ``f``'s box. A GridSpec gives a GridFunction back; points give an
        array.
    absolute : bool
        Integrate ``|f|`` instead of ``f``.
    method : {"auto", "direct", "fft"}
        ``auto`` convolves by FFT when ``eval_points`` is a grid whose
        midpoints sit on the source lattice, and sums directly otherwise.
        Both use the same cell weights.
    """
    if method not in ("auto", "direct", "fft"):
        raise ValueError(f"method must be auto, direct or fft, got {method!r}")
    if spec.n != f.n:
        raise ValueError(f"kernel dimension {spec.n} does not match function dimension {f.n}")
    if eval_points is None:
        eval_points = inner_points(f.grid)
    if isinstance(eval_points, GridSpec):
        pts = eval_points.points().reshape(-1, f.n)
        _check_inside(pts, f.grid)
        offset = _lattice_offset(eval_points, f.grid) if method != "direct" else None
        if method == "fft" and offset is None:
            raise ValueError("the fft path needs a target grid on the source midpoint lattice")
        if offset is not None:
            samples = np.abs(f.samples) if absolute else f.samples
            values = _riesz_fft(samples, offset, eval_points, spec, f.grid.h)
        else:
            ys, vals = _sources(f, "abs" if absolute else None)
            values = _riesz_sum(ys, vals, pts, spec, f.grid.h).reshape(eval_points.shape)
        return GridFunction(eval_points, values)
    ys, vals = _sources(f, "abs" if absolute else None)
    pts = check_points(eval_points, f.n)
    _check_inside(pts, f.grid)
    return _riesz_sum(ys, vals, pts, spec, f.grid.h)


def fractional_integral_richardson(f, spec, points, order=None):
    """``I_alpha f`` at ``points`` and its Richardson error estimate from 2x resolution.

    ``order`` defaults to ``min(2, alpha)``, the local convergence order
    near the kernel singularity.
    """
    if f.analytic_tag is None:
        raise ValueError("a Richardson estimate needs an analytic tag to resample at 2x resolution")
    order = min(2.0, spec.alpha) if order is None else order
    coarse = fractional_integral(f, spec, points)
    fine = fractional_integral(sample(f.analytic_tag, f.grid.refined(2)), spec, points)
    _, err, _ = richardson(coarse, fine, order)
    return coarse, err


def partial_inner(f, alpha, x, r, singular_cell_rule="ball_equivalent", near_field=0):
    """``I_alpha(|f| chi_{Q(x, r)})(x)``."""
    spec = FractionalKernelSpec(alpha, f.n, singular_cell_rule, near_field)
    x = check_point(x, f.n)
    r = check_positive(r, "r")
    ys, vals = _sources(f, "abs")
    inside = np.all(np.abs(ys - x) < r, axis=1)
    return float(_riesz_sum(ys[inside], vals[inside], x[None, :], spec, f.grid.h)[0])


def partial_outer(f, alpha, x, r, singular_cell_rule="ball_equivalent", near_field=0):
    """``I_alpha(|f| chi_{Q(x, r)^c})(x)``."""
    spec = FractionalKernelSpec(alpha, f.n, singular_cell_rule, near_field)
    x = check_point(x, f.n)
    r = check_positive(r, "r")
    ys, vals = _sources(f, "abs")
    outside = ~np.all(np.abs(ys - x) < r, axis=1)
    return float(_riesz_sum(ys[outside], vals[outside], x[None, :], spec, f.grid.h)[0])


# ---------------------------------------------------------------------------
# fractional maximal


def maximal_constant(n, alpha):
    """Constant ``C`` with ``M_alpha f <= C I_alpha |f|`` (cube inside the ball of radius sqrt(n) r)."""
    return max(1.0, (math.sqrt(n) / 2) ** (n - alpha))


def fractional_maximal(f, alpha, eval_points, radii=None):
    """``M_alpha f(x) = sup_r |Q(x, r)|^(alpha/n - 1) int_{Q(x, r)} |f|``.

    Without ``radii`` the supremum runs over the exact layer profile of
    ``|f|`` around each point (continuous in ``r``); with a RadialGrid it is
    the max over those radii.
    """
    n = f.n
    alpha = check_alpha(alpha, n)
    pts = check_points(eval_points, n)
    _check_inside(pts, f.grid)
    absf = abs(f)
    ones = (1.0,) * n
    out = np.zeros(pts.shape[0])
    for k, x in enumerate(pts):
        prof = shell_profile(absf, ones, x)
        if radii is not None:
            rr = radii.radii if isinstance(radii, RadialGrid) else np.asarray(radii, dtype=float)
            out[k] = float(np.max((2.0 * rr) ** (alpha - n) * prof(rr)))
        else:
            out[k] = max((power_sup(c * 2.0 ** (alpha - n), e + alpha - n, a, b)
                          for a, b, c, e in prof.segments()), default=0.0)
    return out


# ---------------------------------------------------------------------------
# Hardy operator and layer cake


def hardy(g, t):
    """``(Hg)(t) = int_0^t g(s) ds`` by the cumulative trapezoid rule.

    Parameters
    ----------
    g : array or callable
        Nonnegative values on ``t`` (or a function evaluated there).
    t : RadialGrid or increasing array
        Nodes; if ``t[0] > 0`` the piece ``(0, t[0])`` is taken as the
        rectangle ``g(t[0]) t[0]``.
    """
    t = t.radii if isinstance(t, RadialGrid) else np.asarray(t, dtype=float)
    if t.ndim != 1 or t.size < 2 or t[0] < 0 or np.any(np.diff(t) <= 0):
        raise ValueError("t must be an increasing 1-d array of nonnegative nodes")
    g = np.asarray(g(t) if callable(g) else g, dtype=float)
    if g.shape != t.shape:
        raise ValueError(f"g has shape {g.shape}, t has shape {t.shape}")
    if np.any(g < 0):
        raise ValueError("the Hardy operator here needs g >= 0")
    return cumulative_trapezoid(g, t, initial=0.0) + g[0] * t[0]


def layer_cake_pair(f, beta, r, t_refine=8):
    """Both sides of the layer-cake identity for ``f >= 0``.

    ``lhs = int_{|x| > r} f(x) |x|^(-beta) dx`` by the midpoint rule.
    ``rhs = beta int_r^inf m(t) t^(-beta-1) dt`` with ``m(t)`` the mass of
    ``f`` on ``r <= |x| <= t``. The t-integral runs the trapezoid rule on
    nodes spaced at most ``h / t_refine`` and at most
    ``t / (GRADED_NODES * t_refine)`` up to one cell past the support
    radius ``T``, and adds the exact tail ``m_total * T^(-beta)``.
    """
    beta = check_positive(beta, "beta")
    r = check_positive(r, "r")
    if np.any(f.samples < 0):
        raise ValueError("the layer-cake identity needs f >= 0")
    pts = f.grid.points().reshape(-1, f.n)
    dist = np.linalg.norm(pts, axis=1)
    mass = f.samples.ravel() * f.grid.cell_volume
    keep = (dist > r) & (mass > 0)
    if not keep.any():
        return 0.0, 0.0
    dist, mass = dist[keep], mass[keep]
    lhs = float(np.sum(mass * dist ** -beta))
    order = np.argsort(dist)
    dist, cum = dist[order], np.cumsum(mass[order])
    t_end = float(dist[-1]) + f.grid.h
    steps = int(math.ceil((t_end - r) / f.grid.h * t_refine))
    # the kernel varies on the scale t, so near a small r the uniform step
    # is joined by nodes with spacing proportional to t
    ratio = 1.0 + 1.0 / (GRADED_NODES * t_refine)
    graded = r * ratio ** np.arange(int(math.log(t_end / r) / math.log(ratio)) + 1)
    nodes = np.union1d(np.linspace(r, t_end, steps + 1), graded[graded < t_end])
    padded = np.concatenate([[0.0], cum])
    # a jump that falls on a node counts half on each side
    m = 0.5 * (padded[np.searchsorted(dist, nodes, side="left")]
               + padded[np.searchsorted(dist, nodes, side="right")])
    body = beta * np.trapezoid(m * nodes ** (-beta - 1), nodes)
    rhs = float(body + cum[-1] * t_end ** -beta)
    return lhs, rhs


__all__ = [
    "FractionalKernelSpec", "fractional_integral", "fractional_integral_richardson", "partial_inner",
    "partial_outer", "fractional_maximal", "maximal_constant", "hardy", "layer_cake_pair",
    "inner_points", "RadialGrid",
]
