from __future__ import annotations

import math

from lyapcert.core.errors.exceptions import ParameterError
from lyapcert.domains.problem.model import MethodParams, NondimParams, ODEParams, ProblemClass


def _finite(**values: float) -> None:
    bad = {name: value for name, value in values.items() if not math.isfinite(value)}
    if bad:
        raise ParameterError("Inputs must be finite", detail={k: repr(v) for k, v in bad.items()})


def validate_problem(m: float, L: float) -> ProblemClass:
    _finite(m=m, L=L)
    if m <= 0.0:
        raise ParameterError("m must be positive", detail={"m": m})
    if L < m:
        raise ParameterError("L must satisfy L >= m", detail={"m": m, "L": L})
    return ProblemClass(m=float(m), L=float(L))


def validate_ode(m: float, b_bar: float) -> ODEParams:
    _finite(m=m, b_bar=b_bar)
    if m <= 0.0:
        raise ParameterError("m must be positive", detail={"m": m})
    return ODEParams(b_bar=float(b_bar), m=float(m))


def nondimensionalize(pc: ProblemClass, mp: MethodParams) -> NondimParams:
    _finite(alpha=mp.alpha, beta=mp.beta, gamma=mp.gamma)
    if mp.alpha <= 0.0:
        raise ParameterError("alpha must be positive", detail={"alpha": mp.alpha})
    delta = math.sqrt(pc.m * mp.alpha)
    return NondimParams(delta=delta, b=(1.0 - mp.beta) / delta)


def dimensionalize(pc: ProblemClass, nd: NondimParams, *, gamma: float | None = None) -> MethodParams:
    """Inverse of ``nondimensionalize``; ``gamma`` defaults to the Nesterov choice gamma = beta."""
    if nd.delta <= 0.0:
        raise ParameterError("delta must be positive", detail={"delta": nd.delta})
    beta = nd.beta
    return MethodParams(
        alpha=nd.delta * nd.delta / pc.m,
        beta=beta,
        gamma=beta if gamma is None else gamma,
    )
