"""Closed-form integrals and suprema of power functions c*r**e on intervals.

Divergent integrals return ``inf`` rather than raising; callers turn that
into a verdict.
"""

import math

import numpy as np

EXP_TOL = 1e-12


def _integral(c, e, a, b):
    if c == 0.0 or not b > a:
        return 0.0
    if math.isinf(c):
        return math.inf
    k = e + 1.0
    if abs(k) < EXP_TOL:
        if a == 0.0 or math.isinf(b):
            return math.inf
        return c * math.log(b / a)
    if k > 0:
        if math.isinf(b):
            return math.inf
        if a == 0.0:
            return c * b ** k / k
        # b**k * (1 - (a/b)**k) / k keeps precision when a is close to b
        return c * b ** k * -math.expm1(k * math.log(a / b)) / k
    if a == 0.0:
        return math.inf
    if math.isinf(b):
        return c * a ** k / -k
    return c * a ** k * -math.expm1(k * math.log(b / a)) / -k


def _sup(c, e, a, b):
    if c == 0.0 or not b > a:
        return 0.0
    if e > EXP_TOL:
        return c * b ** e if not math.isinf(b) else math.inf
    if e < -EXP_TOL:
        return c * a ** e if a > 0 else math.inf
    return c


_integral_v = np.vectorize(_integral, otypes=[float])
_sup_v = np.vectorize(_sup, otypes=[float])


def power_integral(c, e, a, b):
    """Integral of ``c * r**e`` over ``(a, b)``, with ``0 <= a <= b <= inf``."""
    out = _integral_v(c, e, a, b)
    return float(out) if out.ndim == 0 else out


def power_sup(c, e, a, b):
    """Supremum of ``c * r**e`` over the open interval ``(a, b)``."""
    out = _sup_v(c, e, a, b)
    return float(out) if out.ndim == 0 else out
