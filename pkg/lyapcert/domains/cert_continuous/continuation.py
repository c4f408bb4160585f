"""Pseudo-arclength continuation of a planar curve phi(x) = 0."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator

import numpy as np

from lyapcert.core.errors.exceptions import ContinuationStallError
from lyapcert.domains.cert_continuous.model import BranchPoint

logger = logging.getLogger(__name__)

Curve = Callable[[np.ndarray], float]

FD_STEP = 1e-7


def gradient(phi: Curve, x: np.ndarray) -> np.ndarray:
    """Central differences."""
    g = np.empty(2)
    for i in range(2):
        h = FD_STEP * max(1.0, abs(x[i]))
        e = np.zeros(2)
        e[i] = h
        g[i] = (phi(x + e) - phi(x - e)) / (2.0 * h)
    return g


def unit_tangent(phi: Curve, x: np.ndarray, previous: np.ndarray) -> np.ndarray:
    g = gradient(phi, x)
    t = np.array([g[1], -g[0]])
    t /= np.linalg.norm(t)
    return t if t @ previous >= 0.0 else -t


def correct(
    phi: Curve,
    predicted: np.ndarray,
    normal: np.ndarray,
    *,
    ftol: float,
    max_iter: int,
    reach: float,
) -> np.ndarray | None:
    """Newton on a -> phi(predicted + a * normal); None when it fails to settle within ``reach``."""
    a = 0.0
    for _ in range(max_iter):
        x = predicted + a * normal
        value = phi(x)
        if abs(value) <= ftol:
            return x
        slope = gradient(phi, x) @ normal
        if slope == 0.0 or not np.isfinite(slope):
            return None
        da = value / slope
        a -= da
        if abs(a) > reach:
            return None
        if abs(da) <= 1e-13 * max(1.0, float(np.max(np.abs(x)))):
            return predicted + a * normal
    return None


def pseudo_arclength(
    phi: Curve,
    start: np.ndarray,
    direction: np.ndarray,
    *,
    step: float = 1e-3,
    step_range: tuple[float, float] = (1e-12, 1e-2),
    grow: float = 1.3,
    max_steps: int = 5000,
    ftol: float = 1e-14,
    max_newton: int = 25,
) -> Iterator[BranchPoint]:
    """Yield corrected points along the branch through ``start`` heading along ``direction``.

    The step halves on corrector failure and grows by ``grow`` after a success,
    clipped to ``step_range``. Raises ContinuationStallError when the step falls
    below the lower bound or ``max_steps`` points have been produced.
    """
    step_min, step_max = step_range
    x = np.asarray(start, dtype=float)
    t = unit_tangent(phi, x, np.asarray(direction, dtype=float))
    h = min(step, step_max)

    for _ in range(max_steps):
        while True:
            normal = np.array([-t[1], t[0]])
            x_new = correct(phi, x + h * t, normal, ftol=ftol, max_iter=max_newton, reach=h)
            if x_new is not None:
                break
            h *= 0.5
            logger.debug("continuation: corrector failed, step -> %.3g", h)
            if h < step_min:
                raise ContinuationStallError(
                    "Corrector failed below the minimum step",
                    detail={"x": x.tolist(), "step": h},
                    last_point=BranchPoint(x=x, tangent=t, step=h),
                )
        t = unit_tangent(phi, x_new, t)
        x = x_new
        yield BranchPoint(x=x, tangent=t, step=h)
        h = min(h * grow, step_max)

    raise ContinuationStallError(
        f"No turning point within {max_steps} steps",
        detail={"x": x.tolist()},
        last_point=BranchPoint(x=x, tangent=t, step=h),
    )
