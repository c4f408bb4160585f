from __future__ import annotations

import logging
import math

import numpy as np

from lyapcert.core.errors.exceptions import ParameterError
from lyapcert.domains.cert_continuous.service import certify_ode
from lyapcert.domains.cert_discrete.service import build_P_hat, solve_r
from lyapcert.domains.lmi.model import LmiKnobs, Sym2, Sym3
from lyapcert.domains.lmi.service import (
    DEFAULT_TOL,
    assemble_discrete_T,
    build_state_space_hat,
    eigenvalues,
    is_negative_semidefinite,
)
from lyapcert.domains.negative_results.schemas import ScanReport, Witness
from lyapcert.domains.problem.model import NondimParams, ProblemClass
from lyapcert.domains.problem.service import validate_problem

logger = logging.getLogger(__name__)

# Keeps delta strictly below c / sqrt(kappa).
DELTA_FACTOR = 0.9
P_SCALE_MAX = 10.0


def t11_general(P_hat: Sym2, rho_sq: float, delta: float, beta: float, gamma_coeff: float, pc: ProblemClass) -> float:
    """(1,1) entry of T-hat for the family with extrapolation gamma, at a0 = 1 and ell = 0."""
    b2 = beta * beta
    return (
        (b2 - rho_sq) * P_hat.p11
        + 2.0 * delta * b2 * P_hat.p12
        + delta * delta * b2 * P_hat.p22
        + 0.5 * delta * delta * pc.L * (beta - gamma_coeff) ** 2
        - 0.5 * pc.m * gamma_coeff * gamma_coeff * delta * delta
    )


def t11_heavy(P_hat: Sym2, rho_sq: float, delta: float, beta: float, pc: ProblemClass) -> float:
    return t11_general(P_hat, rho_sq, delta, beta, 0.0, pc)


def contradiction_limit(b_bar: float, lam: float, P_bar_hat: Sym2, c: float, pc: ProblemClass) -> float:
    """Limit of t11_heavy / delta as h -> 0 with delta = c sqrt(m/L); T-hat <= 0 needs it to be <= 0."""
    sm = math.sqrt(pc.m)
    return (lam / sm - 2.0 * b_bar) * P_bar_hat.p11 + 2.0 * P_bar_hat.p12 + 0.5 * c * math.sqrt(pc.m / pc.L) * pc.L


def _affine_basis(nd: NondimParams, gamma_coeff: float, alpha: float, pc: ProblemClass) -> tuple[np.ndarray, ...]:
    """T-hat as K0 + rho^2 K1 + sum_e p_e (J_e + rho^2 H_e) over e in (p11, p12, p22)."""
    ss = build_state_space_hat(nd, gamma_nd=gamma_coeff, alpha=alpha)
    zero = Sym2(0.0, 0.0, 0.0)

    def T(P: Sym2, rho_sq: float) -> np.ndarray:
        return assemble_discrete_T(ss, P, LmiKnobs(rho_sq=rho_sq), pc)

    k0 = T(zero, 0.0)
    k1 = T(zero, 1.0) - k0
    units = (Sym2(1.0, 0.0, 0.0), Sym2(0.0, 0.5, 0.0), Sym2(0.0, 0.0, 1.0))
    js = [T(u, 0.0) - k0 for u in units]
    hs = [T(u, 1.0) - k0 - k1 - j for u, j in zip(units, js)]
    return k0, k1, np.stack(js), np.stack(hs)


def infeasibility_scan(
    kappa: float,
    c: float = 1.0,
    n_samples: int = 100_000,
    seed: int = 42,
    *,
    gamma_equals_beta: bool = False,
    tol: float = DEFAULT_TOL,
) -> ScanReport:
    """Random search for (P-hat >= 0, rho^2) making T-hat <= 0 at an accelerated step size.

    m = 1, L = kappa, delta = 0.9 c / sqrt(kappa) and beta = 1 - 2 delta. The Heavy-Ball
    family (gamma = 0) is scanned unless ``gamma_equals_beta``, which also checks the
    analytic Nesterov certificate.
    """
    pc = validate_problem(1.0, kappa)
    if c <= 0.0:
        raise ParameterError("c must be positive", detail={"c": c})
    if n_samples < 1:
        raise ParameterError("n_samples must be at least 1", detail={"n_samples": n_samples})
    delta = DELTA_FACTOR * c / math.sqrt(kappa)
    if not delta < 1.0:
        raise ParameterError("0.9 c / sqrt(kappa) must be below 1", detail={"delta": delta})
    nd = NondimParams(delta=delta, b=2.0)
    beta = nd.beta
    gamma = beta if gamma_equals_beta else 0.0
    alpha = delta * delta / pc.m

    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n_samples, 2, 2))
    u = rng.uniform(0.0, P_SCALE_MAX, n_samples)
    r = 1.0 - rng.random(n_samples)
    P = pc.m * u[:, None, None] * np.einsum("nki,nkj->nij", G, G)
    rho_sq = 1.0 - r * delta
    p = np.stack([P[:, 0, 0], 2.0 * P[:, 0, 1], P[:, 1, 1]], axis=1)

    k0, k1, js, hs = _affine_basis(nd, gamma, alpha, pc)
    T = (
        k0[None]
        + rho_sq[:, None, None] * k1[None]
        + np.einsum("ne,eij->nij", p, js)
        + rho_sq[:, None, None] * np.einsum("ne,eij->nij", p, hs)
    )
    lam_max = np.linalg.eigvalsh(T)[:, -1]
    scale = np.max(np.abs(T), axis=(1, 2))
    best = int(np.argmin(lam_max))
    feasible = bool(np.any(lam_max <= tol * scale))
    witness = Witness(
        p11=float(P[best, 0, 0]),
        p12=float(P[best, 0, 1]),
        p22=float(P[best, 1, 1]),
        rho_sq=float(rho_sq[best]),
        lambda_max=float(lam_max[best]),
        source="sample",
    )
    min_lambda_max = float(lam_max[best])

    if gamma_equals_beta:
        r_star = solve_r(nd.b, delta)
        P_star = build_P_hat(r_star, delta, pc.m)
        rho_star = 1.0 - r_star * delta
        T_star = Sym3.from_array(
            assemble_discrete_T(build_state_space_hat(nd, gamma, alpha), P_star, LmiKnobs(rho_sq=rho_star), pc)
        )
        lam_star = float(eigenvalues(T_star)[-1])
        if is_negative_semidefinite(T_star, tol):
            feasible = True
            witness = Witness(
                p11=P_star.p11,
                p12=P_star.p12,
                p22=P_star.p22,
                rho_sq=rho_star,
                lambda_max=lam_star,
                source="analytic",
            )
        min_lambda_max = min(min_lambda_max, lam_star)

    ode = certify_ode(pc.m, 2.0)
    report = ScanReport(
        kappa=kappa,
        c=c,
        delta=delta,
        beta=beta,
        gamma=gamma,
        n_samples=n_samples,
        seed=seed,
        feasible=feasible,
        min_lambda_max=min_lambda_max,
        witness=witness,
        contradiction=contradiction_limit(2.0, ode.lam, ode.P_bar_hat, c, pc),
    )
    logger.info(
        "hb-scan: kappa=%.3g gamma=%s feasible=%s min_lambda_max=%.3e",
        kappa,
        "beta" if gamma_equals_beta else "0",
        feasible,
        min_lambda_max,
    )
    return report
