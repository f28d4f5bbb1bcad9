"""Exponent algebra and the weighted Hardy-type A-conditions.

Each A-condition is written once against a small backend interface:

* :class:`MonomialBackend` keeps every function of ``t`` as ``c * t**e``.
  Pure power weights stay in this class under products, powers and the
  one-sided integrals, so the final supremum or integral over ``(0, inf)``
  is decided exactly (a sup is finite iff the exponent is 0; an integral of
  a nonzero monomial over ``(0, inf)`` always diverges).
* :class:`LogGridBackend` samples ``log f`` on a uniform grid in ``log t``
  and integrates piecewise powers exactly segment by segment. Windows grow
  and :func:`~mixmorrey.radial.doubling_verdict` turns the sequence of
  truncated values into a verdict.

If an inner integral diverges (for instance a weight outside ``Omega``)
the condition is reported divergent with a warning.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_alpha, check_positive
from .core import ExponentVector, Weight
from .radial import DIVERGENT, FINITE, INCONCLUSIVE, doubling_verdict

EXPONENT_TOL = 1e-9


# ---------------------------------------------------------------------------
# exponent algebra


@dataclass(frozen=True)
class ExponentCase:
    which: str
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.which != "none"


def _pos(x):
    return x if x > 0 else 0.0


def classify_exponents(p1, p2, alpha):
    """First of the three exponent regimes that holds, with slacks.

    Returns
    -------
    ExponentCase
        ``which`` is ``case_4_1``, ``case_4_2``, ``case_4_3`` or ``none``.
    """
    p1 = ExponentVector.coerce(p1)
    p2 = ExponentVector.coerce(p2, p1.n)
    n = p1.n
    a1, a2 = np.array(p1.entries), np.array(p2.entries)
    r1, r2 = p1.reciprocal(), p2.reciprocal()
    diff = float(r1.sum() - r2.sum())
    pos_diff = float(sum(_pos(x) for x in r1 - r2))
    slack = {
        "sum_difference": diff,
        "positive_part_sum": pos_diff,
        "alpha_minus_difference": alpha - diff,
        "alpha_minus_positive_part": alpha - pos_diff,
        "n_minus_alpha": n - alpha,
    }
    alpha_ok = 0 < alpha < n
    c41 = (np.all(a1 > 1) and np.all(a1 <= a2) and np.all(np.isfinite(a2)) and np.any(a1 != a2)
           and diff <= alpha + EXPONENT_TOL and alpha < n)
    if c41:
        return ExponentCase("case_4_1", slack)
    c42 = np.all(a2 > 0) and np.all(a2 < a1) and np.all(a1 > 1) and alpha_ok
    if c42:
        return ExponentCase("case_4_2", slack)
    c43 = (np.all(np.isfinite(a2)) and np.all(a1 > 1) and np.all(np.isfinite(a1))
           and pos_diff < alpha < n)
    if c43:
        return ExponentCase("case_4_3", slack)
    return ExponentCase("none", slack)


def sigma(p1, alpha):
    """``sum 1/p_1i - alpha``; warns when it is not positive."""
    s = ExponentVector.coerce(p1).sum_reciprocal() - alpha
    if s <= 0:
        warnings.warn(f"sigma = {s:g} <= 0: the tail integral of t^(-sigma-1) diverges and the bound is void",
                      RuntimeWarning, stacklevel=2)
    return s


@dataclass(frozen=True)
class NecessityResult:
    alpha: float
    admissible: bool
    lower_bound: float
    note: str = ""


def necessity_exponent(p, q):
    """The only ``alpha`` for which ``L_p -> L_q`` boundedness can hold, plus ``(S_p - S_q)_+``."""
    p = ExponentVector.coerce(p)
    q = ExponentVector.coerce(q, p.n)
    alpha = p.sum_reciprocal() - q.sum_reciprocal()
    ok = 0 < alpha < p.n
    return NecessityResult(alpha, ok, _pos(alpha), "" if ok else f"no admissible alpha: {alpha:g} not in (0, {p.n})")


def weight_transforms(omega1, omega2, theta1, theta2, p1, p2, alpha):
    """Weights ``nu_1``, ``nu_2`` of the Hardy reduction under ``t -> t^(-1/sigma)``.

    ``nu_2(r) = omega_2(r^(-1/sigma)) r^(-S_2/sigma - 1/(theta_2 sigma) - 1/theta_2)`` and
    ``nu_1(r) = omega_1(r^(-1/sigma)) r^(-1/(theta_1 sigma) - 1/theta_1)``.
    """
    p1 = ExponentVector.coerce(p1)
    p2 = ExponentVector.coerce(p2, p1.n)
    s = p1.sum_reciprocal() - alpha
    if s <= 0:
        raise ValueError(f"substitution undefined: sigma = {s:g} <= 0")
    inv1 = 0.0 if math.isinf(theta1) else 1.0 / theta1
    inv2 = 0.0 if math.isinf(theta2) else 1.0 / theta2
    nu2 = omega2.substituted(s, -p2.sum_reciprocal() / s - inv2 / s - inv2)
    nu1 = omega1.substituted(s, -inv1 / s - inv1)
    return nu1, nu2


# ---------------------------------------------------------------------------
# backends


class _NotMonomial(Exception):
    pass


@dataclass(frozen=True)
class Mono:
    """``c * t**e`` on ``(0, inf)``; ``c`` may be ``inf``."""

    c: float
    e: float

    def __mul__(self, other):
        if self.c == 0 or other.c == 0:
            return Mono(0.0, 0.0)
        return Mono(self.c * other.c, self.e + other.e)

    def __pow__(self, p):
        if p == 0:
            return Mono(1.0, 0.0)
        if self.c == 0:
            return Mono(0.0 if p > 0 else math.inf, 0.0)
        return Mono(self.c ** p, self.e * p)

    def __add__(self, other):
        if math.isinf(self.c) or math.isinf(other.c):
            return Mono(math.inf, 0.0)
        if self.c == 0:
            return other
        if other.c == 0:
            return self
        if abs(self.e - other.e) > EXPONENT_TOL:
            raise _NotMonomial
        return Mono(self.c + other.c, self.e)


class MonomialBackend:
    """Closed-form arithmetic on ``c * t**e``."""

    name = "closed_form"

    def __init__(self):
        self.inner_divergent = []

    def weight(self, omega, power, extra=0.0):
        return Mono(omega.coefficient ** power if omega.coefficient else 0.0, omega.exponent * power + extra)

    def t(self, e):
        return Mono(1.0, e)

    def _inner_inf(self, what):
        self.inner_divergent.append(what)
        return Mono(math.inf, 0.0)

    def tail(self, m, what="tail integral"):
        if m.c == 0:
            return Mono(0.0, 0.0)
        k = m.e + 1.0
        if math.isinf(m.c) or k > -EXPONENT_TOL:
            return self._inner_inf(what)
        return Mono(m.c / -k, k)

    def head(self, m, what="head integral"):
        if m.c == 0:
            return Mono(0.0, 0.0)
        k = m.e + 1.0
        if math.isinf(m.c) or k < EXPONENT_TOL:
            return self._inner_inf(what)
        return Mono(m.c / k, k)

    def sup_after(self, m):
        if m.c == 0 or m.e < -EXPONENT_TOL:
            return m
        if m.e <= EXPONENT_TOL:
            return Mono(m.c, 0.0)
        return self._inner_inf("running supremum")

    def sup_before(self, m):
        if m.c == 0 or m.e > EXPONENT_TOL:
            return m
        if m.e >= -EXPONENT_TOL:
            return Mono(m.c, 0.0)
        return self._inner_inf("running supremum")

    def sup(self, m):
        """``(value, direction)`` of ``sup_{t>0}``."""
        if m.c == 0:
            return 0.0, None
        if math.isinf(m.c):
            return math.inf, "inner"
        if abs(m.e) <= EXPONENT_TOL:
            return m.c, None
        return math.inf, "t->inf" if m.e > 0 else "t->0"

    def integral(self, m):
        if m.c == 0:
            return 0.0, None
        if math.isinf(m.c):
            return math.inf, "inner"
        return math.inf, "t->inf" if m.e >= -1.0 else "t->0"


def _log_phi(z):
    """``log((exp(z) - 1) / z)`` evaluated stably."""
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    small = np.abs(z) < 1e-8
    pos = (z > 0) & ~small
    neg = (z < 0) & ~small
    out[small] = z[small] / 2
    out[pos] = z[pos] + np.log(-np.expm1(-z[pos])) - np.log(z[pos])
    out[neg] = np.log(-np.expm1(z[neg])) - np.log(-z[neg])
    return out


class LogGridBackend:
    """Functions of ``t`` as ``log f`` on a uniform grid in ``u = log t``.

    Inner integrals run over the whole grid and continue past either end
    with the power law through the two end nodes (exact for power weights;
    an extrapolation for tabulated ones). The final supremum or integral
    runs over the outer window ``[u_lo, u_hi]`` only.
    """

    name = "log_grid"

    def __init__(self, u_grid, outer):
        self.u = np.asarray(u_grid, dtype=float)
        self.du = self.u[1] - self.u[0]
        self.mask = (self.u >= outer[0] - 1e-12) & (self.u <= outer[1] + 1e-12)
        self.inner_divergent = []

    def weight(self, omega, power, extra=0.0):
        lw = omega.log_value(np.exp(self.u))
        with np.errstate(invalid="ignore"):
            out = lw * power
        if power == 0:
            out = np.zeros_like(self.u)
        return out + extra * self.u

    def t(self, e):
        return e * self.u

    def _segments(self, lv):
        a, b = lv[:-1], lv[1:]
        with np.errstate(invalid="ignore"):
            e = (b - a) / self.du
            seg = a + self.u[:-1] + np.log(self.du) + _log_phi((e + 1.0) * self.du)
        seg = np.where(np.isneginf(a) | np.isneginf(b), -np.inf, seg)
        seg = np.where(np.isposinf(a) | np.isposinf(b), np.inf, seg)
        return seg

    def _check(self, out, what):
        if np.any(np.isposinf(out[self.mask])):
            self.inner_divergent.append(what)
        return out

    def _end_piece(self, a, b, t_end, sign):
        """Log of the integral beyond the grid of the power through the last two nodes.

        ``sign=+1`` extends to infinity from the right end, ``-1`` to zero
        from the left end; ``inf`` when that power is not integrable there.
        """
        if np.isneginf(b):
            return -np.inf
        if np.isposinf(a) or np.isposinf(b):
            return np.inf
        if np.isneginf(a):
            return np.inf if sign < 0 else -np.inf
        k = (b - a) / self.du * sign + 1.0
        if k * sign >= 0 or abs(k) < EXPONENT_TOL:
            return np.inf
        return b + t_end - math.log(abs(k))

    def tail(self, lv, what="tail integral"):
        seg = self._segments(lv)
        beyond = self._end_piece(lv[-2], lv[-1], self.u[-1], +1)
        acc = np.logaddexp.accumulate(np.append(seg, beyond)[::-1])[::-1]
        return self._check(acc, what)

    def head(self, lv, what="head integral"):
        seg = self._segments(lv)
        before = self._end_piece(lv[1], lv[0], self.u[0], -1)
        return self._check(np.logaddexp.accumulate(np.concatenate([[before], seg])), what)

    def sup_after(self, lv):
        return np.maximum.accumulate(lv[::-1])[::-1]

    def sup_before(self, lv):
        return np.maximum.accumulate(lv)

    def sup(self, lv):
        lv = np.where(np.isnan(lv), -np.inf, lv)
        inner = lv[self.mask]
        k = int(np.argmax(inner))
        direction = "t->0" if self.u[self.mask][k] < np.mean(self.u[self.mask]) else "t->inf"
        return float(np.exp(inner[k])), direction

    def integral(self, lv):
        lv = np.where(np.isnan(lv), -np.inf, lv)
        seg = self._segments(np.where(self.mask, lv, -np.inf))
        seg = np.where(self.mask[:-1] & self.mask[1:], seg, -np.inf)
        total = float(np.exp(np.logaddexp.reduce(seg))) if seg.size else 0.0
        mid = seg.size // 2
        left = np.logaddexp.reduce(seg[:mid]) if mid else -np.inf
        right = np.logaddexp.reduce(seg[mid:])
        return total, "t->0" if left > right else "t->inf"


def _mul(B, *terms):
    out = terms[0]
    for t in terms[1:]:
        if isinstance(B, MonomialBackend):
            out = out * t
        else:
            with np.errstate(invalid="ignore"):
                out = out + t
    return out


def _pow(B, a, p):
    if isinstance(B, MonomialBackend):
        return a ** p
    if p == 0:
        return np.zeros_like(a)
    with np.errstate(invalid="ignore"):
        return a * p


def _add(B, a, b):
    return a + b if isinstance(B, MonomialBackend) else np.logaddexp(a, b)


# ---------------------------------------------------------------------------
# the nine cases


def _conj(theta):
    if math.isinf(theta):
        return 1.0
    if theta == 1:
        return math.inf
    return theta / (theta - 1.0)


def theorem_case(theta1, theta2):
    """Which of the nine ``(theta_1, theta_2)`` regimes applies (1..9)."""
    t1 = check_positive(theta1, "theta1", allow_inf=True)
    t2 = check_positive(theta2, "theta2", allow_inf=True)
    if math.isinf(t1):
        return 9 if math.isinf(t2) else 8
    if math.isinf(t2):
        return 6 if t1 <= 1 else 7
    if t1 <= t2:
        return 1 if t1 > 1 else 2
    if t1 > 1:
        return 4 if t2 == 1 else 3
    return 5


CASE_CONDITIONS = {
    1: ("A_1^1", "A_2^1"),
    2: ("A_1^1", "A_2^2"),
    3: ("A_1^3", "A_2^3"),
    4: ("A_1^3", "A_2^4"),
    5: ("A_1^3", "A_2^5"),
    6: ("A^6",),
    7: ("A^7",),
    8: ("A^8",),
    9: ("A^9",),
}

ALL_CONDITIONS = ("A_1^1", "A_2^1", "A_2^2", "A_1^3", "A_2^3", "A_2^4", "A_2^5", "A^6", "A^7", "A^8", "A^9")

INTERPRETATION_NOTES = {
    "A_2^1": "the theta' in the integrand is read as theta_1'; the denominator power is read as W_1^(-theta_1')",
    "A_2^2": "case (2) is read as 0 < theta_1 <= 1 with theta_1 <= theta_2 < inf",
    "A_2^3": "the theta' in the integrand is read as theta_1'; the denominator power is read as W_1^(-theta_1')",
    "A_2^4": "the outer power is read as 1/theta_1'",
    "A_2^5": "the s-exponent is read as (alpha - S_1) theta_1 theta_2 / (theta_1 - theta_2)",
    "A^6": "omega_2(2)(t) is read as omega_2(t)",
}


@dataclass
class _Ctx:
    w1: Weight
    w2: Weight
    t1: float
    t2: float
    s1: float
    s2: float
    alpha: float

    @property
    def d(self):
        return self.s1 - self.s2


def _W1(B, c):
    return B.tail(B.weight(c.w1, c.t1), "int_t^inf omega_1^theta_1")


def _U2(B, c):
    return B.head(B.weight(c.w2, c.t2, c.t2 * c.s2), "int_0^t omega_2^theta_2 r^(theta_2 S_2)")


def _T2(B, c):
    return B.tail(B.weight(c.w2, c.t2, c.t2 * (c.alpha - c.d)), "int_t^inf omega_2^theta_2 r^(theta_2 (alpha - D))")


def _V1_integrand(B, c):
    q = _conj(c.t1)
    return _mul(B, _pow(B, _W1(B, c), -q), B.weight(c.w1, c.t1, q * (c.alpha - c.s1)))


def _V1(B, c):
    return B.tail(_V1_integrand(B, c), "V_1")


def _A11(B, c):
    return B.sup(_mul(B, _pow(B, _T2(B, c), 1 / c.t2), _pow(B, _W1(B, c), -1 / c.t1))), 1.0


def _A21(B, c):
    q = _conj(c.t1)
    return B.sup(_mul(B, _pow(B, _U2(B, c), 1 / c.t2), _pow(B, _V1(B, c), 1 / q))), 1.0


def _A22(B, c):
    return B.sup(_mul(B, B.t(c.alpha - c.s1), _pow(B, _U2(B, c), 1 / c.t2), _pow(B, _W1(B, c), -1 / c.t1))), 1.0


def _outer(t1, t2):
    return (t1 - t2) / (t1 * t2)


def _A13(B, c):
    k = c.t2 / (c.t1 - c.t2)
    ratio = _mul(B, _T2(B, c), _pow(B, _W1(B, c), -1.0))
    integrand = _mul(B, _pow(B, ratio, k), B.weight(c.w2, c.t2, c.t2 * (c.alpha - c.d)))
    return B.integral(integrand), _outer(c.t1, c.t2)


def _A23(B, c):
    g = c.t1 / (c.t1 - c.t2)
    integrand = _mul(B, _pow(B, _U2(B, c), g), _pow(B, _V1(B, c), g * (c.t2 - 1)), _V1_integrand(B, c))
    return B.integral(integrand), _outer(c.t1, c.t2)


def _A24(B, c):
    q = _conj(c.t1)
    u_term = _mul(B, B.t(c.alpha - c.s1), _U2(B, c))
    p_term = B.tail(B.weight(c.w2, 1.0, c.alpha - c.d), "int_t^inf omega_2 r^(alpha - D)")
    ratio = _mul(B, _add(B, p_term, u_term), _pow(B, _W1(B, c), -1.0))
    integrand = _mul(B, _pow(B, ratio, q - 1), u_term, B.t(-1.0))
    return B.integral(integrand), 1.0 / q


def _A25(B, c):
    k = 1.0 / (c.t1 - c.t2)
    inner = _mul(B, B.t((c.alpha - c.s1) * c.t1 * c.t2 * k), _pow(B, _W1(B, c), -c.t2 * k))
    integrand = _mul(B, B.sup_after(inner), _pow(B, _U2(B, c), c.t2 * k), B.weight(c.w2, c.t2, c.t2 * c.s2))
    return B.integral(integrand), _outer(c.t1, c.t2)


def _A6(B, c):
    left = B.sup_before(B.weight(c.w2, 1.0, c.s2))
    return B.sup(_mul(B, left, B.t(c.alpha - c.s1), _pow(B, _W1(B, c), -1 / c.t1))), 1.0


def _A7(B, c):
    q = _conj(c.t1)
    inner = B.tail(_mul(B, B.t(q * (c.alpha - c.s1) - 1.0), _pow(B, _W1(B, c), -(q - 1))), "A^7 inner integral")
    return B.sup(_mul(B, B.weight(c.w2, 1.0, c.s2), _pow(B, inner, 1 / q))), 1.0


def _dual_tail(B, c):
    return B.tail(B.weight(c.w1, -1.0, c.alpha - c.s1 - 1.0), "int_t^inf s^(alpha - S_1 - 1) / omega_1")


def _A8(B, c):
    inner = _mul(B, B.t(c.s1 - c.alpha), _dual_tail(B, c))
    integrand = _mul(B, _pow(B, inner, c.t2), B.weight(c.w2, c.t2, c.t2 * (c.alpha - c.d)))
    return B.integral(integrand), 1.0 / c.t2


def _A9(B, c):
    return B.sup(_mul(B, B.weight(c.w2, 1.0, c.s2), _dual_tail(B, c))), 1.0


_FORMULAS = {
    "A_1^1": _A11, "A_2^1": _A21, "A_2^2": _A22, "A_1^3": _A13, "A_2^3": _A23, "A_2^4": _A24,
    "A_2^5": _A25, "A^6": _A6, "A^7": _A7, "A^8": _A8, "A^9": _A9,
}

# ratio-form conditions: invariant under (omega_1, omega_2) -> (c omega_1, c omega_2)
RATIO_FORM = ("A_1^1", "A_2^2", "A^6", "A^9")


@dataclass(frozen=True)
class ConditionReport:
    case_id: str
    verdict: str
    value: float = None
    direction: str = None
    window: tuple = None
    method: str = "closed_form"
    diagnostics: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def finite(self):
        return self.verdict == FINITE

    def to_dict(self):
        def clean(v):
            if isinstance(v, float) and math.isinf(v):
                return "inf"
            return v
        return {
            "case_id": self.case_id,
            "verdict": self.verdict,
            "value": clean(self.value),
            "direction": self.direction,
            "window": None if self.window is None else [clean(w) for w in self.window],
            "method": self.method,
            "diagnostics": {k: ([clean(x) for x in v] if isinstance(v, list) else clean(v))
                            for k, v in self.diagnostics.items()},
            "notes": list(self.notes),
        }


def _closed_form_ok(w):
    return w.kind == "power" and w.lo == 0 and math.isinf(w.hi)


def _run(formula, B, ctx):
    (value, direction), outer_power = formula(B, ctx)
    if not math.isinf(value) and value > 0:
        value = value ** outer_power
    return value, direction


def _closed_form(case_id, ctx):
    B = MonomialBackend()
    value, direction = _run(_FORMULAS[case_id], B, ctx)
    notes = []
    if B.inner_divergent:
        notes.append("inner integral diverges: " + ", ".join(sorted(set(B.inner_divergent))))
        return ConditionReport(case_id, DIVERGENT, math.inf, "inner", (0.0, math.inf), "closed_form", {}, tuple(notes))
    verdict = FINITE if not math.isinf(value) else DIVERGENT
    return ConditionReport(case_id, verdict, value, direction, (0.0, math.inf), "closed_form", {}, tuple(notes))


POWER_WINDOWS = tuple(math.log(10.0) * k for k in (2, 4, 8, 16))
POINTS_PER_UNIT = 8


def _numeric(case_id, ctx, windows=None, points_per_unit=POINTS_PER_UNIT):
    tabulated = [w for w in (ctx.w1, ctx.w2) if w.kind == "tabulated"]
    if tabulated:
        lo = max(math.log(w.domain[0]) for w in tabulated)
        hi = min(math.log(w.domain[1]) for w in tabulated)
        if not hi > lo:
            raise ValueError("tabulated weights have disjoint ranges")
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        outer_list = [(mid - half * fr, mid + half * fr) for fr in (1 / 8, 1 / 4, 1 / 2, 1.0)]
        inner = (lo, hi)
    else:
        outer_list = [(-L, L) for L in (windows or POWER_WINDOWS)]
        inner = None
    values, directions, divergent_inner = [], [], []
    for outer in outer_list:
        span = inner or (2 * outer[0], 2 * outer[1])
        k = max(16, int(math.ceil((span[1] - span[0]) * points_per_unit)))
        B = LogGridBackend(np.linspace(span[0], span[1], k + 1), outer)
        value, direction = _run(_FORMULAS[case_id], B, ctx)
        values.append(value)
        directions.append(direction)
        divergent_inner.extend(B.inner_divergent)
    window = (math.exp(outer_list[-1][0]), math.exp(outer_list[-1][1]))
    diag = {"window_values": [float(v) for v in values],
            "windows": [[math.exp(a), math.exp(b)] for a, b in outer_list]}
    if divergent_inner:
        return ConditionReport(case_id, DIVERGENT, math.inf, "inner", window, "log_grid", diag,
                               ("inner integral diverges: " + ", ".join(sorted(set(divergent_inner))),))
    verdict = doubling_verdict(values)
    value = values[-1] if verdict == FINITE else (math.inf if verdict == DIVERGENT else None)
    direction = directions[-1] if verdict == DIVERGENT else None
    return ConditionReport(case_id, verdict, value, direction, window, "log_grid", diag)


def evaluate_condition(case_id, omega1, omega2, theta1, theta2, p1, p2, alpha, method="auto",
                       check_weights=True):
    """Evaluate one A-condition for the given weights and exponents.

    Parameters
    ----------
    case_id : str
        One of ``A_1^1, A_2^1, A_2^2, A_1^3, A_2^3, A_2^4, A_2^5, A^6 ... A^9``;
        it must belong to the regime selected by ``(theta1, theta2)``.
    method : {"auto", "closed_form", "numeric"}
        ``auto`` uses the closed form for pure power weights on
        ``(0, inf)`` and the log grid otherwise.

    Returns
    -------
    ConditionReport
    """
    if case_id not in _FORMULAS:
        raise ValueError(f"unknown condition {case_id!r}; expected one of {ALL_CONDITIONS}")
    case = theorem_case(theta1, theta2)
    if case_id not in CASE_CONDITIONS[case]:
        raise ValueError(f"{case_id} does not apply for theta1={theta1}, theta2={theta2}: "
                         f"this is case ({case}) with conditions {CASE_CONDITIONS[case]}")
    p1 = ExponentVector.coerce(p1)
    p2 = ExponentVector.coerce(p2, p1.n)
    alpha = check_alpha(alpha, p1.n)
    ctx = _Ctx(omega1, omega2, float(theta1), float(theta2), p1.sum_reciprocal(), p2.sum_reciprocal(), alpha)
    notes = []
    if check_weights:
        from .morrey import classify_weight

        for name, w, th, p in (("omega_1", omega1, theta1, p1), ("omega_2", omega2, theta2, p2)):
            if classify_weight(w, th, p).in_Omega_theta is False:
                msg = f"{name} is not in Omega_theta (its L_theta tail diverges)"
                warnings.warn(msg, RuntimeWarning, stacklevel=2)
                notes.append(msg)
    if case_id in INTERPRETATION_NOTES:
        notes.append(INTERPRETATION_NOTES[case_id])
    use_closed = method == "closed_form" or (method == "auto" and _closed_form_ok(omega1) and _closed_form_ok(omega2))
    if method == "closed_form" and not (_closed_form_ok(omega1) and _closed_form_ok(omega2)):
        raise ValueError("the closed form needs power weights supported on all of (0, inf)")
    report = None
    if use_closed:
        try:
            report = _closed_form(case_id, ctx)
        except _NotMonomial:
            if method == "closed_form":
                raise ValueError(f"{case_id} does not reduce to a single power for these weights") from None
            notes.append("integrand is a sum of distinct powers; evaluated on the log grid")
    if report is None:
        report = _numeric(case_id, ctx)
    if report.verdict == DIVERGENT and report.direction == "inner":
        warnings.warn(f"{case_id}: {report.notes[0]}", RuntimeWarning, stacklevel=2)
    return ConditionReport(report.case_id, report.verdict, report.value, report.direction, report.window,
                           report.method, report.diagnostics, tuple(report.notes) + tuple(notes))


def evaluate_case(omega1, omega2, theta1, theta2, p1, p2, alpha, method="auto"):
    """Reports for every condition of the regime picked by ``(theta1, theta2)``."""
    case = theorem_case(theta1, theta2)
    return [evaluate_condition(cid, omega1, omega2, theta1, theta2, p1, p2, alpha, method)
            for cid in CASE_CONDITIONS[case]]


__all__ = [
    "ExponentCase", "classify_exponents", "sigma", "NecessityResult", "necessity_exponent",
    "weight_transforms", "theorem_case", "CASE_CONDITIONS", "ALL_CONDITIONS", "RATIO_FORM",
    "ConditionReport", "evaluate_condition", "evaluate_case", "MonomialBackend", "LogGridBackend",
    "INCONCLUSIVE",
]
