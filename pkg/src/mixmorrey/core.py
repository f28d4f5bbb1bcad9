"""Cubes, exponent vectors, grids, sampled functions and radial weights.

Everything here is immutable after construction. Functions are represented
by their midpoint samples on a uniform tensor grid over an axis-aligned box;
when a function came from a closed-form generator the generator travels
along as ``analytic_tag`` so that dilations and translations can be
resampled exactly instead of interpolated.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ._powers import EXP_TOL, power_integral, power_sup
from ._validation import check_positive

MAX_DIM = 3


def _parse_exponent(v):
    if isinstance(v, str):
        v = v.strip().lower()
        return math.inf if v in ("inf", "infinity", "oo") else float(v)
    return float(v)


@dataclass(frozen=True)
class ExponentVector:
    """Per-coordinate exponents ``(p_1, ..., p_n)`` with entries in ``(0, inf]``."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(_parse_exponent(v) for v in self.entries)
        if not 1 <= len(entries) <= MAX_DIM:
            raise ValueError(f"exponent vectors have 1 to {MAX_DIM} entries, got {len(entries)}")
        if any(math.isnan(p) or p <= 0 for p in entries):
            raise ValueError(f"every exponent must be > 0, got {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def coerce(cls, p, n=None):
        """Build from an ExponentVector, a sequence, a comma string or a scalar."""
        if isinstance(p, cls):
            vec = p
        elif isinstance(p, str):
            vec = cls(tuple(p.split(",")))
        elif np.ndim(p) == 0:
            if n is None:
                raise ValueError("a scalar exponent needs the dimension n")
            vec = cls((p,) * n)
        else:
            vec = cls(tuple(p))
        if n is not None and vec.n != n:
            raise ValueError(f"exponent vector has {vec.n} entries, expected {n}")
        return vec

    @property
    def n(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def reciprocal(self):
        """``1/p`` componentwise, with ``1/inf = 0``."""
        return np.array([0.0 if math.isinf(p) else 1.0 / p for p in self.entries])

    def sum_reciprocal(self):
        return float(self.reciprocal().sum())

    def conjugate(self):
        """Hoelder conjugate ``p'`` with ``1/p + 1/p' = 1``; needs every ``p_i >= 1``."""
        if any(p < 1 for p in self.entries):
            raise ValueError(f"conjugate undefined: every exponent must be >= 1, got {self.entries}")
        out = []
        for p in self.entries:
            if math.isinf(p):
                out.append(1.0)
            elif p == 1:
                out.append(math.inf)
            else:
                out.append(p / (p - 1.0))
        return ExponentVector(tuple(out))

    def is_finite(self):
        return not any(math.isinf(p) for p in self.entries)

    def __str__(self):
        return "(" + ", ".join("inf" if math.isinf(p) else f"{p:g}" for p in self.entries) + ")"


# ---------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class Cube:
    """Open cube ``Q(center, half_side)``; its side length is ``2 * half_side``."""

    center: tuple
    half_side: float

    def __post_init__(self):
        center = tuple(float(c) for c in np.atleast_1d(self.center))
        if not 1 <= len(center) <= MAX_DIM:
            raise ValueError(f"cube dimension must be 1..{MAX_DIM}, got {len(center)}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "half_side", check_positive(self.half_side, "half_side"))

    @property
    def n(self):
        return len(self.center)

    @property
    def side(self):
        return 2.0 * self.half_side

    def volume(self):
        return self.side ** self.n

    def bounds(self):
        c = np.asarray(self.center)
        return c - self.half_side, c + self.half_side

    def contains(self, points):
        points = np.asarray(points, dtype=float)
        return np.all(np.abs(points - np.asarray(self.center)) < self.half_side, axis=-1)

    def covers(self, other, tol=1e-12):
        """True if the cube ``other`` lies inside this (closed) cube."""
        lo, hi = self.bounds()
        olo, ohi = other.bounds()
        slack = tol * max(1.0, self.half_side)
        return bool(np.all(olo >= lo - slack) and np.all(ohi <= hi + slack))

    def scaled(self, s):
        return Cube(tuple(np.asarray(self.center) * s), self.half_side * s)

    def shifted(self, v):
        return Cube(tuple(np.asarray(self.center) + np.asarray(v, dtype=float)), self.half_side)

    def complement(self):
        return CubeComplement(self)

    def to_dict(self):
        return {"type": "cube", "center": list(self.center), "half_side": self.half_side}


@dataclass(frozen=True)
class CubeComplement:
    """The set ``R^n \\ Q(x, r)``."""

    cube: Cube

    @property
    def n(self):
        return self.cube.n

    def contains(self, points):
        return ~self.cube.contains(points)

    def scaled(self, s):
        return CubeComplement(self.cube.scaled(s))

    def shifted(self, v):
        return CubeComplement(self.cube.shifted(v))

    def to_dict(self):
        return {"type": "complement", "cube": self.cube.to_dict()}


@dataclass(frozen=True)
class Annulus:
    """``outer \\ inner`` for two cubes."""

    inner: Cube
    outer: Cube

    @property
    def n(self):
        return self.outer.n

    def contains(self, points):
        return self.outer.contains(points) & ~self.inner.contains(points)

    def scaled(self, s):
        return Annulus(self.inner.scaled(s), self.outer.scaled(s))

    def shifted(self, v):
        return Annulus(self.inner.shifted(v), self.outer.shifted(v))

    def to_dict(self):
        return {"type": "annulus", "inner": self.inner.to_dict(), "outer": self.outer.to_dict()}


def region_from_dict(d):
    kind = d.get("type", "cube")
    if kind == "cube":
        return Cube(tuple(d["center"]), d["half_side"])
    if kind == "complement":
        return CubeComplement(region_from_dict(d["cube"]))
    if kind == "annulus":
        return Annulus(region_from_dict(d["inner"]), region_from_dict(d["outer"]))
    raise ValueError(f"unknown region type {kind!r}")


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridSpec:
    """Uniform midpoint grid with ``points_per_axis`` cells per axis over ``box``."""

    box: Cube
    points_per_axis: int

    def __post_init__(self):
        k = int(self.points_per_axis)
        if k != self.points_per_axis or k < 2:
            raise ValueError(f"points_per_axis must be an integer >= 2, got {self.points_per_axis}")
        object.__setattr__(self, "points_per_axis", k)

    @classmethod
    def around(cls, center, half_side, points_per_axis):
        return cls(Cube(tuple(np.atleast_1d(center)), half_side), points_per_axis)

    @property
    def n(self):
        return self.box.n

    @property
    def h(self):
        return self.box.side / self.points_per_axis

    @property
    def cell_volume(self):
        return self.h ** self.n

    @property
    def shape(self):
        return (self.points_per_axis,) * self.n

    def axes(self):
        lo, _ = self.box.bounds()
        offsets = (np.arange(self.points_per_axis) + 0.5) * self.h
        return [lo_i + offsets for lo_i in lo]

    def points(self):
        """Midpoints as an array of shape ``shape + (n,)``; axis 0 is ``x_1``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def refined(self, factor=2):
        return GridSpec(self.box, self.points_per_axis * factor)

    def to_dict(self):
        return {"center": list(self.box.center), "half_side": self.box.half_side,
                "points_per_axis": self.points_per_axis}

    @classmethod
    def from_dict(cls, d):
        return cls.around(d["center"], d["half_side"], d["points_per_axis"])


# ---------------------------------------------------------------------------
# analytic generators

GENERATOR_KINDS = ("indicator", "power", "tensor_power", "constant")


def _vec(v, n):
    if v is None:
        return np.zeros(n)
    return np.broadcast_to(np.asarray(v, dtype=float), (n,)).copy()


@dataclass(frozen=True)
class Generator:
    """Closed-form function ``amplitude * base(scale * x + shift) * prod(chi_E)``.

    ``kind`` selects ``base``:

    * ``indicator``: ``chi_{Q(center, half_side)}``
    * ``power``: ``|z - center|**(-beta)`` on ``r_min <= |z - center| <= r_max``
    * ``tensor_power``: ``prod_i |z_i - center_i|**exponents[i]``, optionally
      cut to ``Q(center, half_side)``
    * ``constant``: ``value``

    ``support`` holds extra restriction regions expressed in the output
    variable ``x``.
    """

    kind: str
    params: dict = field(default_factory=dict)
    amplitude: float = 1.0
    scale: float = 1.0
    shift: tuple = None
    support: tuple = ()

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {GENERATOR_KINDS}")
        check_positive(self.scale, "scale")

    def _n(self, points):
        return np.asarray(points).shape[-1]

    def __call__(self, points):
        points = np.asarray(points, dtype=float)
        n = points.shape[-1]
        z = self.scale * points + _vec(self.shift, n)
        p = self.params
        if self.kind == "constant":
            vals = np.full(points.shape[:-1], float(p.get("value", 1.0)))
        elif self.kind == "indicator":
            cube = Cube(tuple(_vec(p.get("center"), n)), p.get("half_side", 1.0))
            vals = cube.contains(z).astype(float)
        elif self.kind == "power":
            dist = np.linalg.norm(z - _vec(p.get("center"), n), axis=-1)
            beta = float(p.get("beta", 0.0))
            lo, hi = float(p.get("r_min", 0.0)), float(p.get("r_max", math.inf))
            inside = (dist >= lo) & (dist <= hi)
            with np.errstate(divide="ignore"):
                vals = np.where(inside, dist ** -beta if beta else 1.0, 0.0)
        else:
            expo = _vec(p.get("exponents"), n)
            diff = np.abs(z - _vec(p.get("center"), n))
            with np.errstate(divide="ignore"):
                vals = np.prod(diff ** expo, axis=-1)
            if p.get("half_side") is not None:
                cube = Cube(tuple(_vec(p.get("center"), n)), p["half_side"])
                vals = np.where(cube.contains(z), vals, 0.0)
        vals = self.amplitude * vals
        for region in self.support:
            vals = np.where(region.contains(points), vals, 0.0)
        return vals

    def dilate(self, t):
        """Generator of ``x -> self(t * x)``."""
        t = check_positive(t, "t")
        return replace(self, scale=self.scale * t, support=tuple(r.scaled(1.0 / t) for r in self.support))

    def translate(self, h, axis, n):
        """Generator of ``x -> self(x + h * e_axis)``."""
        e = np.zeros(n)
        e[axis] = h
        shift = _vec(self.shift, n) + self.scale * e
        return replace(self, shift=tuple(shift), support=tuple(r.shifted(-e) for r in self.support))

    def restricted(self, region):
        return replace(self, support=self.support + (region,))

    def scaled_by(self, c):
        return replace(self, amplitude=self.amplitude * float(c))

    def to_dict(self):
        d = {"kind": self.kind, **{k: (list(v) if isinstance(v, tuple) else v) for k, v in self.params.items()}}
        if self.amplitude != 1.0:
            d["amplitude"] = self.amplitude
        if self.scale != 1.0:
            d["scale"] = self.scale
        if self.shift is not None and np.any(np.asarray(self.shift) != 0):
            d["shift"] = list(self.shift)
        if self.support:
            d["support"] = [r.to_dict() for r in self.support]
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        kind = d.pop("kind")
        amplitude = d.pop("amplitude", 1.0)
        scale = d.pop("scale", 1.0)
        shift = d.pop("shift", None)
        support = tuple(region_from_dict(r) for r in d.pop("support", []))
        return cls(kind, d, amplitude, scale, None if shift is None else tuple(shift), support)


def indicator(center, half_side):
    return Generator("indicator", {"center": list(np.atleast_1d(center).astype(float)),
                                   "half_side": float(half_side)})


def power(beta, center=None, r_min=0.0, r_max=math.inf):
    params = {"beta": float(beta), "r_min": float(r_min)}
    if center is not None:
        params["center"] = list(np.atleast_1d(center).astype(float))
    if not math.isinf(r_max):
        params["r_max"] = float(r_max)
    return Generator("power", params)


def tensor_power(exponents, center=None, half_side=None):
    params = {"exponents": [float(a) for a in exponents]}
    if center is not None:
        params["center"] = list(np.atleast_1d(center).astype(float))
    if half_side is not None:
        params["half_side"] = float(half_side)
    return Generator("tensor_power", params)


def constant(value=1.0):
    return Generator("constant", {"value": float(value)})


# ---------------------------------------------------------------------------
# sampled functions


class GridFunction:
    """Midpoint samples of a real function on a :class:`GridSpec`.

    The function is taken to vanish outside ``grid.box``.
    """

    def __init__(self, grid, samples, analytic_tag=None):
        samples = np.array(samples, dtype=float)
        if samples.shape != grid.shape:
            raise ValueError(f"samples have shape {samples.shape}, grid expects {grid.shape}")
        bad = ~np.isfinite(samples)
        if bad.any():
            idx = tuple(int(i) for i in np.argwhere(bad)[0])
            where = grid.points()[idx]
            raise ValueError(f"non-finite sample {samples[idx]} at cell {idx} (midpoint {where.tolist()})")
        samples.setflags(write=False)
        self.grid = grid
        self.samples = samples
        self.analytic_tag = analytic_tag

    @property
    def n(self):
        return self.grid.n

    def __repr__(self):
        tag = self.analytic_tag.kind if self.analytic_tag is not None else None
        return f"GridFunction(n={self.n}, points_per_axis={self.grid.points_per_axis}, tag={tag})"

    def _check_same_grid(self, other):
        if other.grid != self.grid:
            raise ValueError("grid functions live on different grids")

    def __mul__(self, c):
        if isinstance(c, GridFunction):
            self._check_same_grid(c)
            return GridFunction(self.grid, self.samples * c.samples)
        tag = self.analytic_tag.scaled_by(c) if self.analytic_tag is not None else None
        return GridFunction(self.grid, self.samples * float(c), tag)

    __rmul__ = __mul__

    def __add__(self, other):
        self._check_same_grid(other)
        return GridFunction(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        self._check_same_grid(other)
        return GridFunction(self.grid, self.samples - other.samples)

    def __neg__(self):
        return self * -1.0

    def __abs__(self):
        return GridFunction(self.grid, np.abs(self.samples))

    def integral(self):
        return float(self.samples.sum() * self.grid.cell_volume)


def sample(generator, grid):
    """Sample ``generator`` at the cell midpoints of ``grid``."""
    if isinstance(generator, dict):
        generator = Generator.from_dict(generator)
    with np.errstate(invalid="ignore", over="ignore"):
        values = generator(grid.points())
    return GridFunction(grid, values, generator)


def _gather_exact(f, target, source_coords):
    """Pick source samples at ``source_coords`` when they hit source midpoints exactly."""
    lo, _ = f.grid.box.bounds()
    idx = (source_coords - lo) / f.grid.h - 0.5
    rounded = np.rint(idx)
    if not np.allclose(idx, rounded, atol=1e-9, rtol=0):
        return None
    rounded = rounded.astype(int)
    inside = np.all((rounded >= 0) & (rounded < f.grid.points_per_axis), axis=-1)
    vals = np.zeros(target.shape)
    clipped = np.clip(rounded, 0, f.grid.points_per_axis - 1)
    vals[inside] = f.samples[tuple(np.moveaxis(clipped, -1, 0))][inside]
    return vals


def dilate(f, t, grid=None, interpolate=False):
    """Return ``delta_t f``, i.e. ``x -> f(t x)``.

    Without ``grid`` the result lives on the source box scaled by ``1/t`` at
    the same resolution, where the samples carry over exactly. With an
    explicit ``grid`` the result is resampled from the analytic tag, gathered
    exactly when target midpoints land on source midpoints, or interpolated
    if ``interpolate`` is set.
    """
    t = check_positive(t, "t")
    tag = f.analytic_tag.dilate(t) if f.analytic_tag is not None else None
    if grid is None:
        target = GridSpec(f.grid.box.scaled(1.0 / t), f.grid.points_per_axis)
        return GridFunction(target, f.samples, tag)
    if tag is not None:
        return sample(tag, grid)
    vals = _gather_exact(f, grid, t * grid.points())
    if vals is not None:
        return GridFunction(grid, vals)
    if not interpolate:
        raise ValueError("dilation of an untagged function onto a non-aligned grid needs interpolate=True")
    from scipy.interpolate import RegularGridInterpolator

    interp = RegularGridInterpolator(f.grid.axes(), f.samples, bounds_error=False, fill_value=0.0)
    return GridFunction(grid, interp(t * grid.points()))


def translate(f, h, axis=0, zero_extend=False):
    """Return ``tau^axis_h f``, i.e. ``x -> f(x + h e_axis)``, on the same grid.

    With an analytic tag the shifted function is resampled exactly. Otherwise
    (or with ``zero_extend``, which treats ``f`` as zero off its box) ``h``
    must be a whole number of cells.
    """
    n = f.n
    if not 0 <= axis < n:
        raise ValueError(f"axis must be in [0, {n}), got {axis}")
    tag = f.analytic_tag
    if tag is not None and zero_extend:
        tag = tag.restricted(f.grid.box)
    if tag is not None:
        return sample(tag.translate(h, axis, n), f.grid)
    steps = h / f.grid.h
    k = int(round(steps))
    if abs(steps - k) > 1e-9:
        raise ValueError(f"shift {h} is not a multiple of the grid spacing {f.grid.h} and f has no analytic tag")
    out = np.zeros_like(f.samples)
    src = [slice(None)] * n
    dst = [slice(None)] * n
    N = f.grid.points_per_axis
    if k >= 0:
        src[axis], dst[axis] = slice(k, N), slice(0, N - k)
    else:
        src[axis], dst[axis] = slice(0, N + k), slice(-k, N)
    out[tuple(dst)] = f.samples[tuple(src)]
    return GridFunction(f.grid, out)


def restrict(f, region):
    """Multiply ``f`` by the indicator of ``region`` at the cell midpoints."""
    mask = region.contains(f.grid.points())
    tag = f.analytic_tag.restricted(region) if f.analytic_tag is not None else None
    return GridFunction(f.grid, np.where(mask, f.samples, 0.0), tag)


# ---------------------------------------------------------------------------
# radial weights


@dataclass(frozen=True)
class Weight:
    """Nonnegative function of the radius on ``(0, inf)``.

    ``kind="power"`` is ``coefficient * r**exponent`` on ``(lo, hi)`` and zero
    elsewhere; integrals and suprema of powers of it are closed form.
    ``kind="tabulated"`` interpolates ``values`` log-linearly in ``log r``
    between the tabulated ``radii``; a segment with a zero endpoint is zero.
    Tabulated weights are undefined outside ``[radii[0], radii[-1]]``.
    """

    kind: str
    exponent: float = 0.0
    coefficient: float = 1.0
    lo: float = 0.0
    hi: float = math.inf
    radii: tuple = ()
    values: tuple = ()

    def __post_init__(self):
        if self.kind == "power":
            if self.coefficient < 0:
                raise ValueError("weight coefficient must be >= 0")
            if not 0 <= self.lo < self.hi:
                raise ValueError(f"weight support needs 0 <= lo < hi, got ({self.lo}, {self.hi})")
        elif self.kind == "tabulated":
            r = np.asarray(self.radii, dtype=float)
            v = np.asarray(self.values, dtype=float)
            if r.ndim != 1 or r.shape != v.shape or r.size < 2:
                raise ValueError("tabulated weight needs matching 1-d radii and values, at least 2 points")
            if np.any(r <= 0) or np.any(np.diff(r) <= 0):
                raise ValueError("tabulated radii must be positive and strictly increasing")
            if np.any(v < 0) or not np.all(np.isfinite(v)):
                raise ValueError("tabulated weight values must be finite and >= 0")
            object.__setattr__(self, "radii", tuple(r))
            object.__setattr__(self, "values", tuple(v))
        else:
            raise ValueError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def power(cls, exponent, coefficient=1.0, lo=0.0, hi=math.inf):
        return cls("power", float(exponent), float(coefficient), float(lo), float(hi))

    @classmethod
    def constant(cls, c=1.0):
        return cls.power(0.0, c)

    @classmethod
    def tabulated(cls, radii, values):
        return cls("tabulated", radii=tuple(radii), values=tuple(values))

    @classmethod
    def parse(cls, text):
        """Parse ``power:<lambda>`` or ``power:<lambda>:<lo>:<hi>``."""
        kind, _, rest = text.partition(":")
        if kind != "power":
            raise ValueError(f"only power weights can be given on the command line, got {text!r}")
        parts = [_parse_exponent(v) for v in rest.split(":")]
        return cls.power(parts[0], 1.0, *(parts[1:3]))

    @property
    def domain(self):
        if self.kind == "power":
            return (0.0, math.inf)
        return (self.radii[0], self.radii[-1])

    def segments(self):
        """Power pieces ``(a, b, c, e)`` meaning ``c * r**e`` on ``(a, b)``."""
        if self.kind == "power":
            return [(self.lo, self.hi, self.coefficient, self.exponent)]
        r = np.asarray(self.radii)
        v = np.asarray(self.values)
        out = []
        for a, b, va, vb in zip(r[:-1], r[1:], v[:-1], v[1:]):
            if va > 0 and vb > 0:
                e = math.log(vb / va) / math.log(b / a)
                out.append((a, b, va / a ** e, e))
        return out

    def _check_range(self, a, b):
        lo, hi = self.domain
        slack = 1e-12
        if a < lo * (1 - slack) or b > hi * (1 + slack):
            raise ValueError(f"weight is tabulated on [{lo}, {hi}] only; requested ({a}, {b})")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "power":
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where((r > self.lo) & (r < self.hi), self.coefficient * r ** self.exponent, 0.0)
            return out if out.ndim else float(out)
        if r.size:
            self._check_range(float(r.min()), float(r.max()))
        lr = np.log(np.asarray(self.radii))
        with np.errstate(divide="ignore"):
            lv = np.log(np.asarray(self.values))
        segs_ok = np.isfinite(lv[:-1]) & np.isfinite(lv[1:])
        k = np.clip(np.searchsorted(lr, np.log(r), side="right") - 1, 0, len(lr) - 2)
        frac = (np.log(r) - lr[k]) / (lr[k + 1] - lr[k])
        with np.errstate(invalid="ignore"):
            out = np.where(segs_ok[k], np.exp(lv[k] + frac * (lv[k + 1] - lv[k])), 0.0)
        exact = np.isin(r, np.asarray(self.radii))
        if exact.any():
            out = np.where(exact, np.interp(r, self.radii, self.values), out)
        return out if out.ndim else float(out)

    def log_value(self, r):
        """``log omega(r)`` (``-inf`` where the weight vanishes), safe for extreme radii."""
        r = np.asarray(r, dtype=float)
        if self.kind == "power":
            inside = (r > self.lo) & (r < self.hi)
            with np.errstate(divide="ignore"):
                base = math.log(self.coefficient) if self.coefficient > 0 else -np.inf
                return np.where(inside, base + self.exponent * np.log(r), -np.inf)
        lo, hi = self.domain
        with np.errstate(divide="ignore"):
            return np.log(self(np.clip(r, lo, hi)))

    def integral(self, theta, a=0.0, b=math.inf, extra=0.0):
        """``int_a^b omega(r)**theta * r**extra dr`` (may be ``inf``)."""
        if self.kind == "tabulated":
            self._check_range(a, b)
        total = 0.0
        for sa, sb, c, e in self.segments():
            lo, hi = max(a, sa), min(b, sb)
            if hi > lo:
                total += power_integral(c ** theta, e * theta + extra, lo, hi)
        return total

    def sup(self, a=0.0, b=math.inf, extra=0.0):
        """``sup_{a<r<b} omega(r) * r**extra``."""
        if self.kind == "tabulated":
            self._check_range(a, b)
        best = 0.0
        for sa, sb, c, e in self.segments():
            lo, hi = max(a, sa), min(b, sb)
            if hi > lo:
                best = max(best, power_sup(c, e + extra, lo, hi))
        return best

    def lebesgue_norm(self, theta, a=0.0, b=math.inf, extra=0.0):
        """``|| omega(r) r**extra ||_{L_theta(a, b)}``."""
        if math.isinf(theta):
            return self.sup(a, b, extra)
        return self.integral(theta, a, b, extra * theta) ** (1.0 / theta)

    def scaled_by(self, c):
        if self.kind == "power":
            return replace(self, coefficient=self.coefficient * c)
        return replace(self, values=tuple(np.asarray(self.values) * c))

    def substituted(self, sigma, extra):
        """Weight ``r -> omega(r**(-1/sigma)) * r**extra``."""
        if sigma <= 0:
            raise ValueError("substitution undefined for sigma <= 0")
        if self.kind == "power":
            new_lo = 0.0 if math.isinf(self.hi) else self.hi ** -sigma
            new_hi = math.inf if self.lo == 0 else self.lo ** -sigma
            return Weight.power(-self.exponent / sigma + extra, self.coefficient, new_lo, new_hi)
        r = np.asarray(self.radii)[::-1] ** -sigma
        v = np.asarray(self.values)[::-1] * r ** extra
        return Weight.tabulated(r, v)

    def is_zero(self):
        if self.kind == "power":
            return self.coefficient == 0
        return not any(self.values)

    def to_dict(self):
        if self.kind == "power":
            return {"kind": "power", "exponent": self.exponent, "coefficient": self.coefficient,
                    "lo": self.lo, "hi": None if math.isinf(self.hi) else self.hi}
        return {"kind": "tabulated", "radii": list(self.radii), "values": list(self.values)}

    def __str__(self):
        if self.kind == "power":
            s = f"{self.coefficient:g}*r^{self.exponent:g}"
            if self.lo > 0 or not math.isinf(self.hi):
                s += f" on ({self.lo:g}, {self.hi:g})"
            return s
        return f"tabulated[{len(self.radii)} pts on {self.domain}]"


__all__ = [
    "EXP_TOL", "ExponentVector", "Cube", "CubeComplement", "Annulus", "region_from_dict",
    "GridSpec", "Generator", "GridFunction", "Weight", "indicator", "power", "tensor_power",
    "constant", "sample", "dilate", "translate", "restrict",
]
