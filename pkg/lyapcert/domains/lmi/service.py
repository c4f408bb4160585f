from __future__ import annotations

import math

import numpy as np

from lyapcert.core.errors.exceptions import ParameterError
from lyapcert.core.linalg import eigvals_sym2, eigvals_sym3, jacobi_eigvals
from lyapcert.domains.lmi.model import LmiKnobs, StateSpaceHat, Sym2, Sym3
from lyapcert.domains.problem.model import NondimParams, ODEParams, ProblemClass

DEFAULT_TOL = 1e-9
KRON_TOL = 1e-10


def _weights(m: float, L: float) -> dict[str, np.ndarray]:
    return {
        "smooth": np.array([[L / 2.0, 0.5], [0.5, 0.0]]),
        "strong": np.array([[-m / 2.0, 0.5], [0.5, 0.0]]),
        "sector": np.array([[-m * L / (m + L), 0.5], [0.5, -1.0 / (m + L)]]),
    }


def _lift(top: np.ndarray, pad: np.ndarray, d: int) -> np.ndarray:
    """Stack [[top, pad], [0, I_d]]."""
    bottom = np.hstack([np.zeros((d, top.shape[1])), np.eye(d)])
    return np.vstack([np.hstack([top, pad]), bottom])


def build_state_space_hat(nd: NondimParams, gamma_nd: float, alpha: float) -> StateSpaceHat:
    """Factors of the three-parameter family over the state [d_k, x_k].

    d_{k+1} = beta d_k - (alpha/delta) grad f(y_k), x_{k+1} = x_k + delta beta d_k - alpha grad f(y_k),
    y_k = x_k + gamma delta d_k.
    """
    if nd.delta <= 0.0:
        raise ParameterError("delta must be positive", detail={"delta": nd.delta})
    beta, delta = nd.beta, nd.delta
    return StateSpaceHat(
        A_hat=np.array([[beta, 0.0], [delta * beta, 1.0]]),
        B_hat=np.array([[-alpha / delta], [-alpha]]),
        C_hat=np.array([[gamma_nd * delta, 1.0]]),
        E_hat=np.array([[0.0, 1.0]]),
    )


def continuous_state_space_hat(ode: ODEParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(A_bar, B_bar, C_bar) factors of the first-order system in (v, x) with v = x'/sqrt(m)."""
    sm = math.sqrt(ode.m)
    return (
        np.array([[-ode.b_bar * sm, 0.0], [sm, 0.0]]),
        np.array([[-1.0 / sm], [0.0]]),
        np.array([[0.0, 1.0]]),
    )


def assemble_discrete_T(
    ss: StateSpaceHat,
    P_hat: Sym2,
    knobs: LmiKnobs,
    pc: ProblemClass,
    d: int = 1,
) -> np.ndarray:
    """The full 3d x 3d matrix T = M0 + a0 rho^2 M1 + a0 (1 - rho^2) M2 + ell M3."""
    A, B, C, E = ss.expand(d)
    P = np.kron(P_hat.as_array(), np.eye(d))
    rho_sq, a0 = knobs.rho_sq, knobs.a0
    w = {k: np.kron(v, np.eye(d)) for k, v in _weights(pc.m, pc.L).items()}

    m0 = np.block([[A.T @ P @ A - rho_sq * P, A.T @ P @ B], [B.T @ P @ A, B.T @ P @ B]])

    zero = np.zeros((d, d))
    g1 = _lift(E @ A - C, E @ B, d)
    g2 = _lift(C - E, zero, d)
    g3 = _lift(C, zero, d)
    n1 = g1.T @ w["smooth"] @ g1
    n2 = g2.T @ w["strong"] @ g2
    n3 = g3.T @ w["strong"] @ g3
    n4 = g3.T @ w["sector"] @ g3

    t = m0 + a0 * rho_sq * (n1 + n2) + a0 * (1.0 - rho_sq) * (n1 + n3) + knobs.ell * n4
    return 0.5 * (t + t.T)


def assemble_discrete_T_hat(ss: StateSpaceHat, P_hat: Sym2, knobs: LmiKnobs, pc: ProblemClass) -> Sym3:
    return Sym3.from_array(assemble_discrete_T(ss, P_hat, knobs, pc, d=1))


def nuevoT_direct(nd: NondimParams, alpha: float, P_hat: Sym2, rho_sq: float, pc: ProblemClass) -> Sym3:
    """Closed-form entries of T-hat for the Nesterov family (gamma = beta) with ell = 0."""
    beta, delta, m = nd.beta, nd.delta, pc.m
    p11, p12, p22 = P_hat.p11, P_hat.p12, P_hat.p22
    return Sym3(
        t11=beta**2 * p11
        + 2.0 * delta * beta**2 * p12
        + delta**2 * beta**2 * p22
        - rho_sq * p11
        - delta**2 * beta**2 * m / 2.0,
        t12=beta * p12 + delta * beta * p22 - rho_sq * p12 - delta * beta * m / 2.0 + rho_sq * delta * beta * m / 2.0,
        t13=-alpha * beta * p11 / delta - 2.0 * alpha * beta * p12 - delta * alpha * beta * p22 + delta * beta / 2.0,
        t22=p22 - rho_sq * p22 - m / 2.0 + rho_sq * m / 2.0,
        t23=-alpha * p12 / delta - alpha * p22 + 0.5 - rho_sq / 2.0,
        t33=alpha**2 * p11 / delta**2 + 2.0 * alpha**2 * p12 / delta + alpha**2 * p22 + alpha**2 * pc.L / 2.0 - alpha,
    )


def assemble_continuous_T(
    ode: ODEParams,
    P_bar_hat: Sym2,
    lam: float,
    sigma: float,
    pc: ProblemClass | None = None,
    d: int = 1,
) -> np.ndarray:
    """The full matrix T-bar = M0 + M1 + lambda M2 + sigma M3 of the continuous-time LMI."""
    if sigma < 0.0:
        raise ParameterError("sigma must be nonnegative", detail={"sigma": sigma})
    if sigma > 0.0 and pc is None:
        raise ParameterError("sigma > 0 needs the smoothness constant L")
    L = pc.L if pc is not None else ode.m
    a_hat, b_hat, c_hat = continuous_state_space_hat(ode)
    eye = np.eye(d)
    A, B, C = np.kron(a_hat, eye), np.kron(b_hat, eye), np.kron(c_hat, eye)
    P = np.kron(P_bar_hat.as_array(), eye)
    w = {k: np.kron(v, eye) for k, v in _weights(ode.m, L).items()}

    zero = np.zeros((d, d))
    m0 = np.block([[P @ A + A.T @ P + lam * P, P @ B], [B.T @ P, zero]])
    ca = C @ A
    cb = C @ B
    m1 = 0.5 * np.block([[np.zeros((2 * d, 2 * d)), ca.T], [ca, cb + cb.T]])
    g3 = _lift(C, zero, d)
    m2 = g3.T @ w["strong"] @ g3
    m3 = g3.T @ w["sector"] @ g3

    t = m0 + m1 + lam * m2 + sigma * m3
    return 0.5 * (t + t.T)


def assemble_continuous_T_hat(
    ode: ODEParams,
    P_bar_hat: Sym2,
    lam: float,
    sigma: float = 0.0,
    pc: ProblemClass | None = None,
) -> Sym3:
    return Sym3.from_array(assemble_continuous_T(ode, P_bar_hat, lam, sigma, pc, d=1))


def continuous_T_direct(
    ode: ODEParams,
    P_bar_hat: Sym2,
    lam: float,
    sigma: float = 0.0,
    pc: ProblemClass | None = None,
) -> Sym3:
    """Closed-form entries of T-bar-hat; t11 carries sqrt(m) on the friction term."""
    m = ode.m
    sm = math.sqrt(m)
    L = pc.L if pc is not None else m
    b = ode.b_bar
    p11, p12, p22 = P_bar_hat.p11, P_bar_hat.p12, P_bar_hat.p22
    return Sym3(
        t11=-2.0 * b * sm * p11 + 2.0 * sm * p12 + lam * p11,
        t12=-b * sm * p12 + sm * p22 + lam * p12,
        t13=-p11 / sm + sm / 2.0,
        t22=lam * p22 - (m / 2.0) * lam - sigma * m * L / (m + L),
        t23=-p12 / sm + lam / 2.0 + sigma / 2.0,
        t33=-sigma / (m + L),
    )


def eigenvalues(S: Sym2 | Sym3) -> np.ndarray:
    if isinstance(S, Sym2):
        return np.array(eigvals_sym2(S.p11, S.p12, S.p22))
    return eigvals_sym3(S.as_array())


def is_negative_semidefinite(S: Sym2 | Sym3, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0.0:
        raise ParameterError("tol must be nonnegative", detail={"tol": tol})
    scale = S.scale
    if scale == 0.0:
        return True
    return bool(eigenvalues(S)[-1] <= tol * scale)


def is_positive_semidefinite(S: Sym2 | Sym3, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0.0:
        raise ParameterError("tol must be nonnegative", detail={"tol": tol})
    scale = S.scale
    if scale == 0.0:
        return True
    return bool(eigenvalues(S)[0] >= -tol * scale)


def kron_expand_check(hat: Sym3, d: int) -> bool:
    """Eigenvalues of hat (x) I_d are those of hat, each repeated d times."""
    if d < 1:
        raise ParameterError("d must be at least 1", detail={"d": d})
    expanded = np.kron(hat.as_array(), np.eye(d))
    got = jacobi_eigvals(expanded)
    want = np.sort(np.repeat(eigenvalues(hat), d))
    return bool(np.max(np.abs(got - want)) <= KRON_TOL * max(1.0, hat.scale))
