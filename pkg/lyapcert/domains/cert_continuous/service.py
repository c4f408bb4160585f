from __future__ import annotations

import logging
import math

import numpy as np

from lyapcert.core.errors.exceptions import CertificateError, ConvergenceError, ParameterError, PoleError
from lyapcert.core.roots import bisect, cauchy_radius, golden_section_max
from lyapcert.domains.cert_continuous.continuation import pseudo_arclength
from lyapcert.domains.cert_continuous.model import AppendixPoint, ContinuousCertificate, OptimalityReport
from lyapcert.domains.lmi.model import Sym2
from lyapcert.domains.lmi.service import (
    DEFAULT_TOL,
    assemble_continuous_T_hat,
    is_negative_semidefinite,
    is_positive_semidefinite,
)
from lyapcert.domains.problem.service import validate_ode, validate_problem

logger = logging.getLogger(__name__)


def xi_bar(r_bar: float, b_bar: float) -> float:
    return r_bar * b_bar * b_bar - 2.0 * (r_bar * r_bar + 1.0) * b_bar + r_bar**3 + 3.0 * r_bar


def solve_r_bar(b_bar: float) -> float:
    # xi_bar(., b) is the monic cubic r^3 - 2b r^2 + (b^2 + 3) r - 2b.
    radius = cauchy_radius([-2.0 * b_bar, b_bar * b_bar + 3.0, -2.0 * b_bar])
    return bisect(lambda r: xi_bar(r, b_bar), -radius, radius)


def certify_ode(m: float, b_bar: float, *, tol: float = DEFAULT_TOL) -> ContinuousCertificate:
    ode = validate_ode(m, b_bar)
    if b_bar < 0.0:
        raise ParameterError("b_bar must be nonnegative (b_bar = 0 is the conservative case)", detail={"b_bar": b_bar})
    r_bar = solve_r_bar(b_bar)
    lam = math.sqrt(m) * r_bar
    P = Sym2(p11=0.5 * m, p12=0.5 * m * r_bar, p22=0.5 * m * r_bar * r_bar)
    T = assemble_continuous_T_hat(ode, P, lam)
    valid = is_negative_semidefinite(T, tol) and is_positive_semidefinite(P, tol)
    if not valid:
        raise CertificateError("Constructed matrices fail the semidefiniteness check", detail={"b_bar": b_bar})
    logger.info("certify_ode: b_bar=%.6g r_bar=%.17g", b_bar, r_bar)
    return ContinuousCertificate(m=m, b_bar=b_bar, r_bar=r_bar, lam=lam, P_bar_hat=P, T_bar_hat=T, valid=valid)


def delta_margin(r_bar: float, p: float, b_bar: float, m: float = 1.0) -> float:
    """t11 t22 - t12^2 of T-bar-hat with p11 = m/2, p12 = m r/2 and p22 = p left free."""
    m2, m3 = m * m, m**3
    return (
        -0.25 * m3 * r_bar**4
        + 0.5 * b_bar * m3 * r_bar**3
        + (0.5 * m2 * p - 0.25 * (3.0 + b_bar * b_bar) * m3) * r_bar**2
        + 0.5 * b_bar * m3 * r_bar
        - m * p * p
    )


def lambda_multiplier(r_bar: float, b_bar: float) -> float:
    return -2.0 * r_bar**3 + 3.0 * b_bar * r_bar**2 - (3.0 + b_bar * b_bar) * r_bar + b_bar


def optimality_check(b_bar: float, m: float = 1.0) -> OptimalityReport:
    """Evaluate the first-order optimality quantities at the constructed certificate."""
    if b_bar <= 0.0:
        raise ParameterError("b_bar must be positive", detail={"b_bar": b_bar})
    r = solve_r_bar(b_bar)
    p = 0.5 * m * r * r
    lam = lambda_multiplier(r, b_bar)
    return OptimalityReport(
        b_bar=b_bar,
        r_star=r,
        p_star=p,
        delta_at_star=delta_margin(r, p, b_bar, m),
        delta_scale=m**3 * max(1.0, b_bar * b_bar),
        lambda_at_star=lam,
        identity_residual=lam + xi_bar(r, b_bar) - ((r * r - 1.0) * b_bar - r**3),
    )


def _f_parts(e: float, s: float, kappa: float) -> tuple[float, float]:
    """(A, G) with F = A - G^2/4, evaluated in e = r - 1 to keep G accurate near (1, 0)."""
    k1 = kappa + 1.0
    r = 1.0 + e
    w = e + s
    d2 = k1 * r + 2.0 * kappa * s
    if d2 == 0.0:
        raise PoleError("(kappa+1) r + 2 kappa s = 0", detail={"r": r, "s": s, "kappa": kappa})
    u = r + s
    a = r * r * s * u * u / (2.0 * d2)
    n = 2.0 * k1 * e + 2.0 * s + k1 * w * (w + e * (2.0 + w))
    return a, n / d2


def F_appendix(r_bar: float, s_bar: float, kappa: float) -> float:
    a, g = _f_parts(r_bar - 1.0, s_bar, kappa)
    return a - 0.25 * g * g


def appendix_construct(r_bar: float, s_bar: float, kappa: float, m: float = 1.0) -> tuple[float, float, float, float]:
    """(p11, p12, p22, b_bar) that zero t22, t23, det P and t12."""
    if r_bar <= 0.0:
        raise ParameterError("r_bar must be positive", detail={"r_bar": r_bar})
    if r_bar + s_bar == 0.0:
        raise PoleError("r_bar + s_bar = 0", detail={"r_bar": r_bar, "s_bar": s_bar})
    q22 = 0.5 + (s_bar / r_bar) * (kappa / (kappa + 1.0))
    q12 = 0.5 * (r_bar + s_bar)
    q11 = q12 * q12 / q22
    return m * q11, m * q12, m * q22, r_bar + q22 / q12


class _ScaledCurve:
    """F in the coordinates E = (r-1)(kappa+1)^(2/3), S = s (kappa+1)^(1/3), scaled by (kappa+1)^(4/3).

    Near (1, 0) the branch reads S = 2 E^2 for every kappa.
    """

    def __init__(self, kappa: float) -> None:
        self.kappa = kappa
        k1 = kappa + 1.0
        self.c23 = k1 ** (2.0 / 3.0)
        self.c13 = k1 ** (1.0 / 3.0)
        self.c43 = k1 ** (4.0 / 3.0)

    def __call__(self, x: np.ndarray) -> float:
        a, g = _f_parts(x[0] / self.c23, x[1] / self.c13, self.kappa)
        return self.c43 * (a - 0.25 * g * g)

    def unscale(self, x: np.ndarray) -> tuple[float, float]:
        return 1.0 + x[0] / self.c23, x[1] / self.c13

    def solve_E(self, S: float, guess: float, *, max_iter: int = 50) -> float:
        E = guess
        for _ in range(max_iter):
            value = self(np.array([E, S]))
            h = 1e-7 * max(1.0, abs(E))
            slope = (self(np.array([E + h, S])) - self(np.array([E - h, S]))) / (2.0 * h)
            if slope == 0.0:
                break
            dE = value / slope
            E -= dE
            if abs(dE) <= 1e-15 * max(1.0, abs(E)):
                return E
        raise ConvergenceError("Newton in E did not converge", detail={"S": S, "E": E})


def trace_appendix_curve(kappa: float, n_points: int) -> list[tuple[float, float]]:
    """The first ``n_points`` continuation points (r_bar, s_bar) of the branch leaving (1, 0) with r_bar > 1."""
    curve = _ScaledCurve(kappa)
    points: list[tuple[float, float]] = []
    for bp in pseudo_arclength(curve, np.zeros(2), np.array([1.0, 0.0])):
        points.append(curve.unscale(bp.x))
        if len(points) >= n_points:
            break
    return points


def appendix_max_rate(kappa: float, *, tol: float = DEFAULT_TOL, max_steps: int = 5000) -> AppendixPoint:
    """Point of largest r_bar on the branch of F = 0 leaving (1, 0) into r_bar > 1."""
    if not kappa > 1.0:
        raise ParameterError("kappa must exceed 1", detail={"kappa": kappa})
    curve = _ScaledCurve(kappa)

    prev = None
    steps = 0
    for bp in pseudo_arclength(curve, np.zeros(2), np.array([1.0, 0.0]), max_steps=max_steps):
        steps += 1
        if prev is not None and prev.tangent[0] > 0.0 and bp.tangent[0] <= 0.0:
            break
        prev = bp
    assert prev is not None

    s_lo, s_hi = sorted((prev.x[1], bp.x[1]))
    e_lo, e_hi = prev.x[0], bp.x[0]

    def E_of_S(S: float) -> float:
        frac = 0.0 if s_hi == s_lo else (S - s_lo) / (s_hi - s_lo)
        return curve.solve_E(S, e_lo + frac * (e_hi - e_lo))

    S_star = golden_section_max(E_of_S, s_lo, s_hi, xtol=1e-11 * max(1.0, s_hi))
    E_star = E_of_S(S_star)
    r_bar, s_bar = curve.unscale(np.array([E_star, S_star]))
    p11, p12, p22, b_bar = appendix_construct(r_bar, s_bar, kappa)
    point = AppendixPoint(
        kappa=kappa,
        r_bar=r_bar,
        s_bar=s_bar,
        b_bar=b_bar,
        p11_over_m=p11,
        p12_over_m=p12,
        p22_over_m=p22,
        steps=steps,
    )

    cert = appendix_certificate(point, m=1.0, tol=tol)
    if not cert.valid:
        raise CertificateError("Appendix point fails the semidefiniteness check", detail={"kappa": kappa})
    logger.info("appendix: kappa=%.3g r_bar-1=%.3e s_bar=%.3e steps=%d", kappa, r_bar - 1.0, s_bar, steps)
    return point


def appendix_certificate(point: AppendixPoint, m: float, *, tol: float = DEFAULT_TOL) -> ContinuousCertificate:
    """Certificate with sigma = sqrt(m) s_bar for F_{m, kappa m}."""
    pc = validate_problem(m, point.kappa * m)
    ode = validate_ode(m, point.b_bar)
    sm = math.sqrt(m)
    lam = sm * point.r_bar
    sigma = sm * point.s_bar
    P = Sym2(p11=m * point.p11_over_m, p12=m * point.p12_over_m, p22=m * point.p22_over_m)
    T = assemble_continuous_T_hat(ode, P, lam, sigma, pc)
    return ContinuousCertificate(
        m=m,
        b_bar=point.b_bar,
        r_bar=point.r_bar,
        lam=lam,
        P_bar_hat=P,
        T_bar_hat=T,
        valid=is_negative_semidefinite(T, tol) and is_positive_semidefinite(P, tol),
        s_bar=point.s_bar,
        sigma=sigma,
        L=pc.L,
    )


def certify_ode_appendix(m: float, L: float, *, tol: float = DEFAULT_TOL) -> ContinuousCertificate:
    pc = validate_problem(m, L)
    cert = appendix_certificate(appendix_max_rate(pc.kappa, tol=tol), m, tol=tol)
    if not cert.valid:
        raise CertificateError("Appendix certificate fails the semidefiniteness check", detail={"m": m, "L": L})
    return cert
