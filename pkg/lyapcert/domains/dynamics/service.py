from __future__ import annotations

import logging
import math

import numpy as np

from lyapcert.core.errors.exceptions import DivergenceError, ParameterError
from lyapcert.domains.cert_continuous.model import ContinuousCertificate
from lyapcert.domains.cert_continuous.service import certify_ode, solve_r_bar
from lyapcert.domains.cert_discrete.model import DiscreteCertificate
from lyapcert.domains.cert_discrete.service import build_P_hat, build_certificate, solve_r
from lyapcert.domains.dynamics.model import (
    LimitConvention,
    LimitReport,
    LimitRow,
    Objective,
    OdeTrajectory,
    Trajectory,
    TrajectoryLimitReport,
    TrajectoryLimitRow,
)
from lyapcert.domains.problem.model import MethodParams, NondimParams, ProblemClass
from lyapcert.domains.problem.service import validate_ode

logger = logging.getLogger(__name__)


# Agreement required between a certificate's parameters and the run's; beta, gamma and
# b_bar are dimensionless and may sit at 0, so they also get it as an absolute floor.
_MATCH_RTOL = 1e-12


def _log(value: float) -> float:
    return math.log(value) if value > 0.0 else -math.inf


def _require_finite(**arrays: np.ndarray) -> None:
    for name, value in arrays.items():
        if not np.all(np.isfinite(value)):
            raise ParameterError(f"{name} must be finite", detail={name: np.asarray(value).tolist()})


def _require_match(what: str, certified: float, actual: float, abs_tol: float = 0.0) -> None:
    if not math.isclose(certified, actual, rel_tol=_MATCH_RTOL, abs_tol=abs_tol):
        raise ParameterError(
            f"Certificate was built for a different {what}",
            detail={"parameter": what, "certificate": certified, "run": actual},
        )


def run_discrete(
    obj: Objective,
    mp: MethodParams,
    x0: np.ndarray,
    x_minus1: np.ndarray | None = None,
    n_steps: int = 100,
    certificate: DiscreteCertificate | None = None,
) -> Trajectory:
    """Iterate x_{k+1} = x_k + beta (x_k - x_{k-1}) - alpha grad f(x_k + gamma (x_k - x_{k-1})).

    With a certificate, V_k = rho^{-2k} (f(x_k) - f* + [d_k, x_k - x*] P [d_k, x_k - x*]^T)
    is kept as log V_k.
    """
    if n_steps < 1:
        raise ParameterError("n_steps must be at least 1", detail={"n_steps": n_steps})
    if mp.alpha <= 0.0:
        raise ParameterError("alpha must be positive", detail={"alpha": mp.alpha})
    x0 = np.asarray(x0, dtype=float)
    x_prev = x0.copy() if x_minus1 is None else np.asarray(x_minus1, dtype=float)
    _require_finite(x0=x0, x_minus1=x_prev)
    if certificate is not None:
        _require_match("m", certificate.pc.m, obj.m)
        _require_match("alpha", certificate.mp.alpha, mp.alpha)
        _require_match("beta", certificate.mp.beta, mp.beta, abs_tol=_MATCH_RTOL)
        _require_match("gamma", certificate.mp.gamma, mp.gamma, abs_tol=_MATCH_RTOL)
        if obj.L > certificate.pc.L * (1.0 + _MATCH_RTOL):
            raise ParameterError(
                "Objective L exceeds the L the certificate covers",
                detail={"certificate_L": certificate.pc.L, "objective_L": obj.L},
            )
    x_init_prev = x_prev
    delta = math.sqrt(obj.m * mp.alpha)

    xs = np.empty((n_steps + 1, obj.dim))
    ds = np.empty((n_steps + 1, obj.dim))
    gaps = np.empty(n_steps + 1)
    x = x0
    for k in range(n_steps + 1):
        if not np.all(np.isfinite(x)):
            raise DivergenceError(
                f"Non-finite iterate at k={k}",
                detail={"k": k},
                last_finite={"k": k - 1, "x": xs[k - 1].tolist(), "f_gap": float(gaps[k - 1])},
            )
        xs[k] = x
        ds[k] = (x - x_prev) / delta
        gaps[k] = obj.gap(x)
        if k == n_steps:
            break
        step = x - x_prev
        y = x + mp.gamma * step
        x_prev, x = x, x + mp.beta * step - mp.alpha * obj.grad(y)

    log_v = bound = None
    if certificate is not None:
        if certificate.rho_sq <= 0.0:
            raise ParameterError("V_k needs rho^2 > 0", detail={"rho_sq": certificate.rho_sq})
        log_rho_sq = math.log(certificate.rho_sq)
        e = xs - obj.x_star
        brackets = np.array([certificate.bracket(gaps[k], ds[k], e[k]) for k in range(n_steps + 1)])
        with np.errstate(divide="ignore"):
            log_v = np.log(brackets) - np.arange(n_steps + 1) * log_rho_sq
        C = certificate.bound_constant(gaps[0], x0, x_init_prev, obj.x_star)
        bound = np.exp(_log(C) + np.arange(n_steps + 1) * log_rho_sq)

    traj = Trajectory(
        k=np.arange(n_steps + 1),
        x=xs,
        d=ds,
        f_gap=gaps,
        delta=delta,
        log_V=log_v,
        bound=bound,
        seed=obj.seed,
    )
    logger.info("run_discrete: %s steps=%d final_gap=%.3e", mp.family.value, n_steps, gaps[-1])
    return traj


def default_h_int(L: float, t_end: float) -> float:
    return min(0.005 / math.sqrt(L), t_end / 1e4)


def run_ode(
    obj: Objective,
    b_bar: float,
    x0: np.ndarray,
    xdot0: np.ndarray,
    t_end: float,
    h_int: float | None = None,
    certificate: ContinuousCertificate | None = None,
) -> OdeTrajectory:
    """Classical RK4 on v' = -b_bar sqrt(m) v - grad f(x)/sqrt(m), x' = sqrt(m) v."""
    ode = validate_ode(obj.m, b_bar)
    _require_finite(x0=np.asarray(x0, dtype=float), xdot0=np.asarray(xdot0, dtype=float))
    if certificate is not None:
        _require_match("m", certificate.m, obj.m)
        _require_match("b_bar", certificate.b_bar, b_bar, abs_tol=_MATCH_RTOL)
        if certificate.sigma > 0.0 and certificate.L is not None and obj.L > certificate.L * (1.0 + _MATCH_RTOL):
            raise ParameterError(
                "Objective L exceeds the L the certificate covers",
                detail={"certificate_L": certificate.L, "objective_L": obj.L},
            )
    if not t_end > 0.0:
        raise ParameterError("t_end must be positive", detail={"t_end": t_end})
    h = default_h_int(obj.L, t_end) if h_int is None else h_int
    if not h > 0.0:
        raise ParameterError("h_int must be positive", detail={"h_int": h})
    n = max(1, int(math.ceil(t_end / h - 1e-9)))
    h = t_end / n
    sm = math.sqrt(ode.m)

    def field(x: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return sm * v, -ode.b_bar * sm * v - obj.grad(x) / sm

    xs = np.empty((n + 1, obj.dim))
    vs = np.empty((n + 1, obj.dim))
    x = np.asarray(x0, dtype=float).copy()
    v = np.asarray(xdot0, dtype=float) / sm
    xs[0], vs[0] = x, v
    for j in range(1, n + 1):
        k1x, k1v = field(x, v)
        k2x, k2v = field(x + 0.5 * h * k1x, v + 0.5 * h * k1v)
        k3x, k3v = field(x + 0.5 * h * k2x, v + 0.5 * h * k2v)
        k4x, k4v = field(x + h * k3x, v + h * k3v)
        x = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise DivergenceError(
                f"Non-finite state at t={j * h:.6g}",
                detail={"t": j * h},
                last_finite={"t": (j - 1) * h, "x": xs[j - 1].tolist(), "v": vs[j - 1].tolist()},
            )
        xs[j], vs[j] = x, v

    t = np.arange(n + 1) * h
    gaps = np.array([obj.gap(xj) for xj in xs])
    log_v = bound = brackets = None
    if certificate is not None:
        e = xs - obj.x_star
        brackets = np.array([certificate.bracket(gaps[j], vs[j], e[j]) for j in range(n + 1)])
        with np.errstate(divide="ignore"):
            log_v = np.log(brackets) + certificate.lam * t
        bound = brackets[0] * np.exp(-certificate.lam * t)

    logger.info("run_ode: b_bar=%.4g steps=%d h=%.3e final_gap=%.3e", b_bar, n, h, gaps[-1])
    return OdeTrajectory(t=t, x=xs, v=vs, f_gap=gaps, h_int=h, log_V=log_v, bound=bound, bracket=brackets)


def limit_study(
    b_bar: float,
    m: float,
    h_list: list[float],
    convention: LimitConvention = LimitConvention.FIXED_B,
) -> LimitReport:
    """Discrete rates and P-hat against their continuous limits as h -> 0."""
    if m <= 0.0:
        raise ParameterError("m must be positive", detail={"m": m})
    if convention is LimitConvention.POLYAK and b_bar != 2.0:
        raise ParameterError("The (1 - delta)/(1 + delta) momentum tends to b_bar = 2", detail={"b_bar": b_bar})
    r_bar = solve_r_bar(b_bar)
    P_bar = np.array([[0.5 * m, 0.5 * m * r_bar], [0.5 * m * r_bar, 0.5 * m * r_bar * r_bar]])

    rows: list[LimitRow] = []
    for h in h_list:
        delta = math.sqrt(m) * h
        if not 0.0 < delta < 1.0:
            raise ParameterError("sqrt(m) h must lie in (0, 1)", detail={"h": h, "m": m})
        b = b_bar if convention is LimitConvention.FIXED_B else 2.0 / (1.0 + delta)
        r_h = solve_r(b, delta)
        P_h = build_P_hat(r_h, delta, m).as_array()
        rows.append(
            LimitRow(
                h=h,
                delta=delta,
                r_h=r_h,
                r_error=abs(r_h - r_bar),
                p_error=float(np.max(np.abs(P_h - P_bar))),
            )
        )

    slope = None
    errs = np.array([row.r_error for row in rows])
    hs = np.array([row.h for row in rows])
    if len(rows) >= 2 and np.all(errs > 0.0):
        slope = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
    K = float(np.max(errs / hs)) if rows else 0.0
    logger.info("limit_study: b_bar=%.4g convention=%s slope=%s K=%.4g", b_bar, convention.value, slope, K)
    return LimitReport(b_bar=b_bar, m=m, convention=convention, r_bar=r_bar, rows=rows, slope=slope, K=K)


def trajectory_limit(
    obj: Objective,
    b_bar: float,
    x0: np.ndarray,
    xdot0: np.ndarray,
    t_end: float,
    h_list: list[float],
) -> TrajectoryLimitReport:
    """Nesterov iterates with alpha = h^2, beta = 1 - b_bar sqrt(m) h against the ODE sampled at t = kh."""
    x0 = np.asarray(x0, dtype=float)
    xdot0 = np.asarray(xdot0, dtype=float)
    pc = ProblemClass(m=obj.m, L=obj.L)
    sm = math.sqrt(obj.m)
    ode_cert = certify_ode(obj.m, b_bar) if b_bar > 0.0 else None

    rows: list[TrajectoryLimitRow] = []
    for h in h_list:
        n = int(round(t_end / h))
        if n < 1:
            raise ParameterError("h must not exceed t_end", detail={"h": h, "t_end": t_end})
        delta = sm * h
        alpha = h * h
        mp = MethodParams.nesterov(alpha=alpha, beta=1.0 - b_bar * delta)
        cert = build_certificate(pc, NondimParams(delta=delta, b=b_bar), alpha) if ode_cert is not None else None
        disc = run_discrete(obj, mp, x0, x0 - h * xdot0, n, certificate=cert)

        sub = max(1, int(math.ceil(h / default_h_int(obj.L, t_end))))
        cont = run_ode(obj, b_bar, x0, xdot0, n * h, h_int=h / sub, certificate=ode_cert)
        x_err = float(np.max(np.linalg.norm(disc.x - cont.x[::sub], axis=1)))

        v_err = None
        if disc.log_V is not None and cont.log_V is not None:
            diff = disc.log_V - cont.log_V[::sub]
            diff = diff[np.isfinite(diff)]
            v_err = float(np.max(np.abs(np.expm1(diff)))) if diff.size else None
        rows.append(TrajectoryLimitRow(h=h, n_steps=n, x_error=x_err, lyapunov_error=v_err))
    return TrajectoryLimitReport(b_bar=b_bar, t_end=t_end, rows=rows)
