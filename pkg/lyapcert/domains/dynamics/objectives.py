"""Test functions in F_{m,L}."""

from __future__ import annotations

import math

import numpy as np

from lyapcert.core.errors.exceptions import ConvergenceError, ParameterError
from lyapcert.domains.dynamics.model import Objective, ProblemKind
from lyapcert.domains.problem.service import validate_problem

# Below this |x - x*| the softplus Bregman term is summed as a Taylor series.
_SERIES_RADIUS = 1e-4


def make_quadratic(m: float, L: float, dim: int, seed: int = 42) -> Objective:
    pc = validate_problem(m, L)
    if dim < 1:
        raise ParameterError("dim must be at least 1", detail={"dim": dim})
    if dim == 1:
        eig = np.array([pc.m])
    else:
        rng = np.random.default_rng(seed)
        eig = np.exp(rng.uniform(math.log(pc.m), math.log(pc.L), dim))
        eig[0] = pc.m
        eig[-1] = pc.L

    def grad(x: np.ndarray) -> np.ndarray:
        return eig * x

    def gap(x: np.ndarray) -> float:
        return 0.5 * float(x @ (eig * x))

    return Objective(
        kind=ProblemKind.QUADRATIC,
        dim=dim,
        m=pc.m,
        L=pc.L,
        grad=grad,
        gap=gap,
        x_star=np.zeros(dim),
        f_star=0.0,
        seed=seed,
    )


def sigmoid(x: np.ndarray | float) -> np.ndarray:
    return np.exp(-np.logaddexp(0.0, -np.asarray(x, dtype=float)))


def _softplus_root(m: float, c: float, *, max_iter: int = 200) -> float:
    """Root of m x + c sigmoid(x); Newton kept inside a shrinking bracket."""
    lo, hi = -c / m, 0.0
    x = 0.5 * (lo + hi)
    tol = 1e-14 * max(1.0, c)
    for _ in range(max_iter):
        s = float(sigmoid(x))
        g = m * x + c * s
        if abs(g) <= tol:
            return x
        if g > 0.0:
            hi = x
        else:
            lo = x
        step = x - g / (m + c * s * (1.0 - s))
        x = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4.0 * np.finfo(float).eps * max(1.0, abs(x)):
            return x
    raise ConvergenceError("Softplus minimizer search did not converge", detail={"m": m, "c": c})


def make_softplus_composite(m: float, L: float, dim: int) -> Objective:
    """f(x) = (m/2)||x||^2 + 4(L - m) sum_i ln(1 + e^{x_i}); the curvature of each term lies in [m, L]."""
    pc = validate_problem(m, L)
    if not pc.L > pc.m:
        raise ParameterError("softplus composite needs L > m", detail={"m": m, "L": L})
    if dim < 1:
        raise ParameterError("dim must be at least 1", detail={"dim": dim})
    c = 4.0 * (pc.L - pc.m)
    root = _softplus_root(pc.m, c)
    s0 = float(sigmoid(root))
    # Derivatives 2..4 of softplus at the root.
    d2 = s0 * (1.0 - s0)
    d3 = d2 * (1.0 - 2.0 * s0)
    d4 = d2 * (1.0 - 6.0 * s0 + 6.0 * s0 * s0)
    x_star = np.full(dim, root)
    f_star = float(dim * (0.5 * pc.m * root * root + c * np.logaddexp(0.0, root)))

    def grad(x: np.ndarray) -> np.ndarray:
        return pc.m * x + c * sigmoid(x)

    def gap(x: np.ndarray) -> float:
        t = x - x_star
        near = np.abs(t) < _SERIES_RADIUS
        breg = np.empty_like(t)
        tn = t[near]
        breg[near] = tn * tn * (d2 / 2.0 + tn * (d3 / 6.0 + tn * d4 / 24.0))
        tf = t[~near]
        breg[~near] = np.log1p(s0 * np.expm1(tf)) - s0 * tf
        return float(0.5 * pc.m * t @ t + c * np.sum(breg))

    return Objective(
        kind=ProblemKind.SOFTPLUS,
        dim=dim,
        m=pc.m,
        L=pc.L,
        grad=grad,
        gap=gap,
        x_star=x_star,
        f_star=f_star,
    )


def make_objective(kind: ProblemKind, m: float, L: float, dim: int, seed: int = 42) -> Objective:
    if kind is ProblemKind.QUADRATIC:
        return make_quadratic(m, L, dim, seed)
    return make_softplus_composite(m, L, dim)
