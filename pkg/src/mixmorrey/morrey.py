"""Local and global mixed Morrey-type quasi-norms and weight classification.

For a sampled function the map ``r -> ||f||_{L_p(Q(x, r))}`` only changes
when the open cube swallows another layer of cell midpoints. We compute it
exactly at those layer radii (the "shell profile") and join the knots by
powers of ``r``; between two positive knots this is log-log interpolation,
below the first knot the profile is ``F_1 (r / rho_1)^{sum 1/p}`` (exact
for ``f`` locally constant), and past the support it is constant. Power
weights times a piecewise power integrate in closed form, so the radial
``L_theta`` norm over ``(0, inf)`` needs no truncation.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._powers import power_integral, power_sup
from ._validation import check_point, check_positive
from .core import ExponentVector, Weight
from .exceptions import InsufficientSupportError
from .mixed_norm import iterated_norm
from .radial import DIVERGENT, FINITE, INCONCLUSIVE, RadialGrid, doubling_verdict

DEFAULT_LATTICE_POINTS = 9


@dataclass(frozen=True)
class MorreySpaceSpec:
    """Parameters ``(p, theta, omega)`` of ``LM_{p theta, omega}`` / ``GM_{p theta, omega}``."""

    p: ExponentVector
    theta: float
    omega: Weight

    def __post_init__(self):
        object.__setattr__(self, "p", ExponentVector.coerce(self.p))
        object.__setattr__(self, "theta", check_positive(self.theta, "theta", allow_inf=True))
        if self.omega.is_zero():
            raise ValueError("the weight must not vanish identically")

    @property
    def n(self):
        return self.p.n


@dataclass(frozen=True)
class ShellProfile:
    """Piecewise-power model of ``r -> ||f||_{L_p(Q(x, r))}``.

    ``radii`` and ``values`` are the exact knots; ``segments()`` lists
    ``(a, b, c, e)`` meaning ``c * r**e`` on ``(a, b)``, the last one
    reaching to infinity.
    """

    center: tuple
    radii: np.ndarray
    values: np.ndarray
    exponent_sum: float
    box_reach: float

    @property
    def total(self):
        return float(self.values[-1]) if self.values.size else 0.0

    def segments(self):
        rho, F, s = self.radii, self.values, self.exponent_sum
        if F.size == 0 or F[-1] == 0:
            return []
        out = []
        if F[0] > 0:
            out.append((0.0, rho[0], F[0] / rho[0] ** s, s))
        for a, b, fa, fb in zip(rho[:-1], rho[1:], F[:-1], F[1:]):
            if fa > 0:
                e = math.log(fb / fa) / math.log(b / a) if fb != fa else 0.0
                out.append((a, b, fa / a ** e, e))
            elif fb > 0:
                # profile jumps from 0 to fb somewhere in (a, b); put the step halfway
                out.append((0.5 * (a + b), b, fb, 0.0))
        out.append((rho[-1], math.inf, F[-1], 0.0))
        return out

    def __call__(self, r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.zeros_like(r)
        for a, b, c, e in self.segments():
            m = (r > a) & (r <= b)
            out[m] = c * r[m] ** e
        return out


def _axis_offsets(f, x):
    return [ax - xi for ax, xi in zip(f.grid.axes(), x)]


def shell_profile(f, p, x=None):
    """Exact local norms of ``f`` over the cubes ``Q(x, rho_j)`` that are unions of cell layers."""
    p = ExponentVector.coerce(p, f.n)
    x = tuple(float(v) for v in check_point(x, f.n))
    h = f.grid.h
    offsets = _axis_offsets(f, x)
    lo_box, hi_box = f.grid.box.bounds()
    box_reach = float(np.min(np.minimum(np.asarray(x) - lo_box, hi_box - np.asarray(x))))
    nz = np.argwhere(f.samples != 0)
    if nz.size == 0:
        return ShellProfile(x, np.array([h / 2]), np.array([0.0]), p.sum_reciprocal(), box_reach)
    nz_lo, nz_hi = nz.min(axis=0), nz.max(axis=0)
    tol = 1e-9 * h
    levels = np.unique(np.concatenate([np.abs(o) for o in offsets]))
    radii, values = [], []
    for d in levels:
        ranges = []
        for o in offsets:
            idx = np.nonzero(np.abs(o) <= d + tol)[0]
            if idx.size == 0:
                break
            ranges.append((idx[0], idx[-1]))
        if len(ranges) < f.n:
            continue
        block = f.samples[tuple(slice(a, b + 1) for a, b in ranges)]
        radii.append(d + h / 2)
        values.append(iterated_norm(block, p.entries, h))
        if all(a <= lo and b >= hi for (a, b), lo, hi in zip(ranges, nz_lo, nz_hi)):
            break
    return ShellProfile(x, np.array(radii), np.array(values), p.sum_reciprocal(), box_reach)


@dataclass(frozen=True)
class MorreyNormResult:
    value: float
    center: tuple
    window: tuple
    method: str
    lattice: tuple = None
    notes: tuple = ()

    def __float__(self):
        return self.value

    @property
    def divergent(self):
        return math.isinf(self.value)

    def to_dict(self):
        d = {
            "value": self.value if not self.divergent else "inf",
            "verdict": DIVERGENT if self.divergent else FINITE,
            "center": list(self.center),
            "window": [w if not math.isinf(w) else "inf" for w in self.window],
            "method": self.method,
        }
        if self.lattice is not None:
            d["lattice_size"] = len(self.lattice)
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def _radial_norm_closed_form(profile, omega, theta, a, b):
    pieces = []
    for fa, fb, fc, fe in profile.segments():
        for wa, wb, wc, we in omega.segments():
            lo, hi = max(a, fa, wa), min(b, fb, wb)
            if hi > lo:
                pieces.append((wc * fc, we + fe, lo, hi))
    if math.isinf(theta):
        return max((power_sup(c, e, lo, hi) for c, e, lo, hi in pieces), default=0.0)
    total = sum(power_integral(c ** theta, e * theta, lo, hi) for c, e, lo, hi in pieces)
    return total ** (1.0 / theta)


def _radial_norm_grid(profile, omega, theta, radii):
    vals = omega(radii.radii) * profile(radii.radii)
    if math.isinf(theta):
        return float(vals.max())
    return float(np.sum(vals ** theta * radii.weights) ** (1.0 / theta))


def local_morrey_norm(f, spec, x=None, radii=None, r_min=0.0, r_max=math.inf, compact_support=True):
    """``|| omega(r) ||f||_{L_p(Q(x, r))} ||_{L_theta(r_min, r_max)}``.

    Parameters
    ----------
    f : GridFunction
    spec : MorreySpaceSpec
    x : point, optional
        Cube center; the origin by default.
    radii : RadialGrid, optional
        Replace the closed-form radial integral by the sum
        ``sum_k omega(r_k)^theta F(r_k)^theta dr_k`` over these radii.
    r_min, r_max : float
        Radial window (ignored when ``radii`` is given).
    compact_support : bool
        Treat ``f`` as zero outside its box, which lets the window reach
        past the box. When False, cubes must stay inside the box.

    Returns
    -------
    MorreyNormResult
        ``value`` is ``inf`` when the radial integral diverges.
    """
    if spec.n != f.n:
        raise ValueError(f"space dimension {spec.n} does not match function dimension {f.n}")
    if radii is not None:
        r_min, r_max = radii.r_min, radii.r_max
    if not 0 <= r_min < r_max:
        raise ValueError(f"need 0 <= r_min < r_max, got ({r_min}, {r_max})")
    profile = shell_profile(f, spec.p, x)
    if not compact_support and r_max > profile.box_reach * (1 + 1e-12):
        raise InsufficientSupportError(
            f"insufficient support: Q(x, {r_max}) leaves the box (reach {profile.box_reach})")
    if spec.omega.kind == "tabulated":
        spec.omega._check_range(max(r_min, 1e-300), r_max)
    if radii is not None:
        value = _radial_norm_grid(profile, spec.omega, spec.theta, radii)
        method = "log_grid"
    else:
        value = _radial_norm_closed_form(profile, spec.omega, spec.theta, r_min, r_max)
        method = "closed_form"
    return MorreyNormResult(float(value), profile.center, (r_min, r_max), method)


def default_lattice(grid, points=DEFAULT_LATTICE_POINTS):
    """``points**n`` centers over the inner half of the box, snapped to the half-cell lattice."""
    lo, _ = grid.box.bounds()
    half = grid.h / 2
    axes = []
    for c, l in zip(grid.box.center, lo):
        raw = np.linspace(c - grid.box.half_side / 2, c + grid.box.half_side / 2, points)
        axes.append(l + np.round((raw - l) / half) * half)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _pick_best(values, centers):
    values = np.asarray(values)
    best = values.max()
    if math.isinf(best):
        ties = np.isinf(values)
    else:
        ties = values >= best * (1 - 1e-12)
    idx = np.nonzero(ties)[0]
    return idx[np.argmin(np.linalg.norm(centers[idx], axis=1))]


def global_morrey_norm(f, spec, centers=None, **kwargs):
    """Max of :func:`local_morrey_norm` over a finite set of centers.

    This is a lower bound for the supremum over all of ``R^n``; the lattice
    is recorded on the result. Ties go to the center nearest the origin.
    """
    centers = default_lattice(f.grid) if centers is None else np.atleast_2d(np.asarray(centers, dtype=float))
    if centers.size == 0:
        raise ValueError("the center lattice is empty")
    results = [local_morrey_norm(f, spec, c, **kwargs) for c in centers]
    k = _pick_best([r.value for r in results], centers)
    best = results[k]
    return MorreyNormResult(best.value, best.center, best.window, best.method,
                            lattice=tuple(map(tuple, centers)), notes=("lower bound over a finite lattice",))


def mixed_morrey_norm(f, q, p, centers=None):
    """``sup_Q |Q|^(1/p - (1/n) sum 1/q_j) ||f chi_Q||_{L_q}`` over lattice cubes.

    Cubes are the layer unions of :func:`shell_profile` around each center;
    between layers the normalized norm is monotone, so these cubes attain
    the supremum of the piecewise-power profile.
    """
    q = ExponentVector.coerce(q, f.n)
    p = check_positive(p, "p", allow_inf=True)
    n = f.n
    expo = (0.0 if math.isinf(p) else n / p) - q.sum_reciprocal()
    if expo > 1e-12:
        raise ValueError(f"not a mixed Morrey space: sum 1/q_j = {q.sum_reciprocal():g} < n/p = {n / p:g}")
    centers = default_lattice(f.grid) if centers is None else np.atleast_2d(np.asarray(centers, dtype=float))
    if centers.size == 0:
        raise ValueError("the center lattice is empty")
    best_vals = []
    for c in centers:
        prof = shell_profile(f, q, c)
        best_vals.append(float(np.max((2.0 * prof.radii) ** expo * prof.values)))
    k = _pick_best(best_vals, centers)
    return MorreyNormResult(best_vals[k], tuple(float(c) for c in centers[k]), (0.0, math.inf), "cube_sweep",
                            lattice=tuple(map(tuple, centers)), notes=("lower bound over a finite lattice",))


# ---------------------------------------------------------------------------
# weight classes


@dataclass(frozen=True)
class WeightClass:
    """Degeneracy flags and class membership of a weight.

    A flag is ``None`` when a tabulated weight does not decide it.
    """

    degenerate_tail: bool
    degenerate_origin: bool
    in_Omega_theta: bool
    in_Omega_p_theta: bool
    witnesses: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "degenerate_tail": self.degenerate_tail,
            "degenerate_origin": self.degenerate_origin,
            "in_Omega_theta": self.in_Omega_theta,
            "in_Omega_p_theta": self.in_Omega_p_theta,
            "witnesses": self.witnesses,
            "verdicts": self.verdicts,
        }


def _flag(verdict):
    return {DIVERGENT: True, FINITE: False}.get(verdict)


def _and(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def classify_weight(omega, theta, p):
    """Decide the degeneracy conditions and ``Omega`` membership of ``omega``.

    ``degenerate_tail``: ``||omega||_{L_theta(t, inf)} = inf`` for every t.
    ``degenerate_origin``: ``||omega(r) r^(sum 1/p)||_{L_theta(0, t)} = inf`` for every t.
    ``in_Omega_p_theta`` follows the class definition literally: a finite
    tail together with a divergent origin norm.

    Power weights are decided in closed form at ``t = 1``; only the ends
    ``0`` and ``inf`` can make their norms infinite. Tabulated weights
    grow a window geometrically towards each end of the table and apply
    :func:`doubling_verdict`.
    """
    theta = check_positive(theta, "theta", allow_inf=True)
    s = ExponentVector.coerce(p).sum_reciprocal()
    if omega.is_zero():
        raise ValueError("the weight must not vanish identically")
    if omega.kind == "power":
        t = 1.0
        tail = omega.lebesgue_norm(theta, t, math.inf)
        origin = omega.lebesgue_norm(theta, 0.0, t, extra=s)
        v_tail = DIVERGENT if math.isinf(tail) else FINITE
        v_origin = DIVERGENT if math.isinf(origin) else FINITE
        witnesses = {"tail_t": t, "origin_t": t, "tail_norm": tail, "origin_norm": origin}
    else:
        a, b = omega.domain
        mid = math.sqrt(a * b)
        fracs = [1 / 8, 1 / 4, 1 / 2, 1.0]
        tails = [omega.lebesgue_norm(theta, mid, mid * (b / mid) ** fr) for fr in fracs]
        origins = [omega.lebesgue_norm(theta, mid * (a / mid) ** fr, mid, extra=s) for fr in fracs]
        v_tail, v_origin = doubling_verdict(tails), doubling_verdict(origins)
        witnesses = {"tail_t": mid, "origin_t": mid, "tail_window": [mid, b], "origin_window": [a, mid]}
    deg_tail, deg_origin = _flag(v_tail), _flag(v_origin)
    in_theta = None if deg_tail is None else not deg_tail
    return WeightClass(deg_tail, deg_origin, in_theta, _and(in_theta, deg_origin), witnesses,
                       {"tail": v_tail, "origin": v_origin})


__all__ = [
    "MorreySpaceSpec", "ShellProfile", "shell_profile", "MorreyNormResult", "local_morrey_norm",
    "global_morrey_norm", "mixed_morrey_norm", "default_lattice", "WeightClass", "classify_weight",
    "INCONCLUSIVE",
]
