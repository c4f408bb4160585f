from __future__ import annotations

import math
from collections.abc import Callable

from lyapcert.core.errors.exceptions import ConvergenceError

MAX_BISECTIONS = 200
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def cauchy_radius(coefficients: list[float]) -> float:
    """Bound on |x| over the roots of x^n + c_{n-1}x^{n-1} + ... + c_0."""
    return 1.0 + max(abs(c) for c in coefficients)


def bisect(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    xtol: float = 1e-13,
    max_iter: int = MAX_BISECTIONS,
) -> float:
    """Root of ``fn`` in [lo, hi]; the interval width at return is below ``xtol * max(1, |root|)``."""
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise ConvergenceError(
            "Bracket does not straddle a sign change",
            detail={"lo": lo, "hi": hi, "f_lo": f_lo, "f_hi": f_hi},
        )

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= xtol * max(1.0, abs(mid)):
            return 0.5 * (lo + hi)

    raise ConvergenceError(
        f"Bisection did not converge in {max_iter} steps",
        detail={"lo": lo, "hi": hi},
    )


def golden_section_max(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Location of the maximum of a unimodal ``fn`` on [lo, hi]."""
    c = hi - _INV_GOLDEN * (hi - lo)
    d = lo + _INV_GOLDEN * (hi - lo)
    fc = fn(c)
    fd = fn(d)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_GOLDEN * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_GOLDEN * (hi - lo)
            fd = fn(d)
    return 0.5 * (lo + hi)
