from __future__ import annotations

import logging
import math

import numpy as np

from lyapcert.core.errors.exceptions import CertificateError, NoRealRootsError, ParameterError
from lyapcert.core.roots import bisect, cauchy_radius
from lyapcert.domains.cert_discrete.model import BRange, DiscreteCertificate, ProbeReport, QuadraticRoots, RootKind
from lyapcert.domains.lmi.model import LmiKnobs, Sym2
from lyapcert.domains.lmi.service import (
    DEFAULT_TOL,
    assemble_discrete_T_hat,
    build_state_space_hat,
    is_negative_semidefinite,
    is_positive_semidefinite,
)
from lyapcert.domains.problem.model import MethodParams, NondimParams, ProblemClass
from lyapcert.domains.problem.service import nondimensionalize

logger = logging.getLogger(__name__)

DOUBLE_ROOT_TOL = 1e-14
# Relative slack on the hypothesis inequalities; alpha = 1/L computed in floating point must pass.
_HYPOTHESIS_SLACK = 1e-12


def xi_delta(r: float, b: float, delta: float) -> float:
    one_m = 1.0 - delta * delta
    return (r + delta) * one_m * b * b - 2.0 * (1.0 + r * r) * one_m * b + (r**3 - 3.0 * r * r * delta + 3.0 * r - delta)


def xi_delta_coefficients(b: float, delta: float) -> list[float]:
    """Coefficients of r^2, r, 1 in the monic cubic r -> xi_delta(r, b, delta)."""
    one_m = 1.0 - delta * delta
    return [
        -3.0 * delta - 2.0 * one_m * b,
        3.0 + one_m * b * b,
        -delta + delta * one_m * b * b - 2.0 * one_m * b,
    ]


def solve_r(b: float, delta: float) -> float:
    if not 0.0 < delta <= 1.0:
        raise ParameterError("delta must lie in (0, 1]", detail={"delta": delta})
    if delta == 1.0:
        # xi_1(r, b) = (r - 1)^3 for every b.
        return 1.0
    radius = cauchy_radius(xi_delta_coefficients(b, delta))
    return bisect(lambda r: xi_delta(r, b, delta), -radius, radius)


def b_roots(r: float, delta: float) -> QuadraticRoots:
    if r == -delta:
        raise ParameterError("r = -delta is the vertical asymptote", detail={"r": r, "delta": delta})
    one_m = 1.0 - delta * delta
    disc = (1.0 - r * r) * one_m
    scale = max(1.0, abs(one_m))
    denom = (r + delta) * one_m
    centre = (1.0 + r * r) * one_m / denom
    if abs(disc) < DOUBLE_ROOT_TOL * scale:
        return QuadraticRoots(kind=RootKind.DOUBLE, b_minus=centre, b_plus=centre)
    if disc < 0.0:
        return QuadraticRoots(kind=RootKind.COMPLEX)
    half_width = (1.0 - r * delta) * math.sqrt(disc) / denom
    lo, hi = sorted((centre - half_width, centre + half_width))
    return QuadraticRoots(kind=RootKind.DISTINCT, b_minus=lo, b_plus=hi)


def real_b_roots(r: float, delta: float) -> tuple[float, float]:
    roots = b_roots(r, delta)
    if roots.kind is RootKind.COMPLEX:
        raise NoRealRootsError("1 - r^2 < 0: no real b solves xi = 0", detail={"r": r, "delta": delta})
    assert roots.b_minus is not None and roots.b_plus is not None
    return roots.b_minus, roots.b_plus


def b_range(delta: float) -> BRange:
    if not 0.0 < delta < 1.0:
        raise ParameterError("delta must lie in (0, 1)", detail={"delta": delta})
    one_m = 1.0 - delta * delta
    root = math.sqrt(one_m)
    b_min = (one_m - root) / (delta * one_m)
    b_max = (one_m + root) / (delta * one_m)
    return BRange(
        b_min=b_min,
        b_max=b_max,
        beta_admissible=(-root, root),
        beta_image=(1.0 - delta * b_max, 1.0 - delta * b_min),
    )


def build_P_hat(r: float, delta: float, m: float) -> Sym2:
    u = 1.0 - r * delta
    return Sym2(p11=0.5 * m * u * u, p12=0.5 * m * r * u, p22=0.5 * m * r * r)


def build_certificate(
    pc: ProblemClass,
    nd: NondimParams,
    alpha: float,
    *,
    tol: float = DEFAULT_TOL,
) -> DiscreteCertificate:
    """Rate, P-hat and T-hat for a Nesterov-family method, without checking the hypotheses on alpha and beta."""
    r = solve_r(nd.b, nd.delta)
    solved = NondimParams(delta=nd.delta, b=nd.b, r=r)
    rho_sq = 1.0 - r * nd.delta
    P_hat = build_P_hat(r, nd.delta, pc.m)
    ss = build_state_space_hat(solved, gamma_nd=solved.beta, alpha=alpha)
    T_hat = assemble_discrete_T_hat(ss, P_hat, LmiKnobs(rho_sq=rho_sq), pc)
    valid = r > 0.0 and is_negative_semidefinite(T_hat, tol) and is_positive_semidefinite(P_hat, tol)
    return DiscreteCertificate(
        pc=pc,
        mp=MethodParams.nesterov(alpha=alpha, beta=solved.beta),
        nd=solved,
        rho_sq=rho_sq,
        P_hat=P_hat,
        T_hat=T_hat,
        valid=valid,
    )


def certify(pc: ProblemClass, mp: MethodParams, *, tol: float = DEFAULT_TOL) -> DiscreteCertificate:
    if mp.gamma != mp.beta:
        raise ParameterError(
            "Certificates of this form exist for the Nesterov family only (gamma = beta)",
            detail={"beta": mp.beta, "gamma": mp.gamma},
        )
    nd = nondimensionalize(pc, mp)
    if mp.alpha > (1.0 / pc.L) * (1.0 + _HYPOTHESIS_SLACK):
        raise ParameterError(
            "Violated alpha <= 1/L",
            detail={"inequality": "alpha <= 1/L", "alpha": mp.alpha, "bound": 1.0 / pc.L},
        )
    beta_bound = math.sqrt(max(0.0, 1.0 - pc.m * mp.alpha))
    if abs(mp.beta) > beta_bound + _HYPOTHESIS_SLACK:
        raise ParameterError(
            "Violated -sqrt(1 - m alpha) <= beta <= sqrt(1 - m alpha)",
            detail={
                "inequality": "-sqrt(1 - m*alpha) <= beta <= sqrt(1 - m*alpha)",
                "beta": mp.beta,
                "bound": beta_bound,
            },
        )

    logger.info("certify: delta=%.6g b=%.6g", nd.delta, nd.b)
    cert = build_certificate(pc, nd, mp.alpha, tol=tol)
    if not cert.valid:
        raise CertificateError(
            "Constructed matrices fail the semidefiniteness check",
            detail={"r": cert.r, "rho_sq": cert.rho_sq},
        )
    logger.info("certify: r=%.17g rho_sq=%.17g", cert.r, cert.rho_sq)
    return cert


def optimal_momentum(pc: ProblemClass, alpha: float) -> MethodParams:
    """For a fixed step alpha <= 1/L the momentum minimizing the certified rate; rho^2 = 1 - sqrt(m alpha)."""
    if not 0.0 < alpha <= (1.0 / pc.L) * (1.0 + _HYPOTHESIS_SLACK):
        raise ParameterError("alpha must lie in (0, 1/L]", detail={"alpha": alpha, "bound": 1.0 / pc.L})
    delta = math.sqrt(pc.m * alpha)
    return MethodParams.nesterov(alpha=alpha, beta=(1.0 - delta) / (1.0 + delta))


def optimal_params(pc: ProblemClass) -> MethodParams:
    return optimal_momentum(pc, 1.0 / pc.L)


def linearized_constraints(delta: float, increments: np.ndarray, m: float = 1.0) -> np.ndarray:
    """Linearized feasibility margins around the optimal certificate.

    ``increments`` has rows (sigma~, p11~, p12~, p22~). Returned columns are
    (det P margin, t22 t33 - t23^2 margin, -p22~); feasibility needs all three >= 0.
    """
    inc = np.atleast_2d(np.asarray(increments, dtype=float))
    s, p11, p12, p22 = inc[:, 0], inc[:, 1], inc[:, 2], inc[:, 3]
    det_p = p11 - 2.0 * (1.0 - delta) * p12 + (1.0 - delta) ** 2 * p22
    block23 = -((m / 2.0) * s + delta * p12 + delta**2 * p22) ** 2 + delta**3 * p22 * (
        p11 + 2.0 * delta * p12 + delta**2 * p22
    )
    return np.column_stack([det_p, block23, -p22])


def local_optimality_probe(
    delta: float,
    n_samples: int,
    radius: float,
    tol: float = 0.0,
    *,
    m: float = 1.0,
    seed: int = 42,
) -> ProbeReport:
    """Random search for rate-improving increments that satisfy the linearized constraints."""
    if n_samples < 1:
        raise ParameterError("n_samples must be at least 1", detail={"n_samples": n_samples})
    if not 0.0 < delta < 1.0:
        raise ParameterError("delta must lie in (0, 1)", detail={"delta": delta})
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal((n_samples, 4))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    inc = direction * (radius * rng.random(n_samples) ** 0.25)[:, None]
    inc[:, 0] = -np.abs(inc[:, 0])

    margins = linearized_constraints(delta, inc, m)
    ok = margins >= 0.0
    feasible = ok.all(axis=1)
    improving = feasible & (inc[:, 0] < -tol)
    report = ProbeReport(
        delta=delta,
        m=m,
        n_samples=n_samples,
        radius=radius,
        tol=tol,
        seed=seed,
        n_improving_feasible=int(improving.sum()),
        n_feasible=int(feasible.sum()),
        violations={
            "det_p": int((~ok[:, 0]).sum()),
            "block23": int((~ok[:, 1]).sum()),
            "p22": int((~ok[:, 2]).sum()),
        },
        n_tried=int(margins.shape[0]),
        best_margin=float(np.max(np.min(margins, axis=1))),
    )
    logger.info("probe: delta=%.4g samples=%d improving_feasible=%d", delta, n_samples, report.n_improving_feasible)
    return report
