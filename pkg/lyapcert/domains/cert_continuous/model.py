from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from lyapcert.domains.lmi.model import Sym2, Sym3


@dataclass(frozen=True)
class ContinuousCertificate:
    m: float
    b_bar: float
    r_bar: float
    lam: float
    P_bar_hat: Sym2
    T_bar_hat: Sym3
    valid: bool
    s_bar: float = 0.0
    sigma: float = 0.0
    # Set only when sigma > 0, which needs the smoothness constant.
    L: float | None = None

    C_bar_recipe = "f(x(0)) - f* + [v(0), x(0) - x*] P [v(0), x(0) - x*]^T with v = x'/sqrt(m)"

    def bracket(self, f_gap: float, v: np.ndarray, e: np.ndarray) -> float:
        """f(x) - f* + [v, x - x*] P [v, x - x*]^T."""
        p = self.P_bar_hat
        return float(f_gap + p.p11 * v @ v + 2.0 * p.p12 * v @ e + p.p22 * e @ e)

    def bound_constant(self, f_gap0: float, x0: np.ndarray, xdot0: np.ndarray, x_star: np.ndarray) -> float:
        return self.bracket(f_gap0, xdot0 / math.sqrt(self.m), x0 - x_star)


@dataclass(frozen=True)
class OptimalityReport:
    b_bar: float
    r_star: float
    p_star: float
    delta_at_star: float
    delta_scale: float
    lambda_at_star: float
    identity_residual: float


@dataclass(frozen=True)
class AppendixPoint:
    kappa: float
    r_bar: float
    s_bar: float
    b_bar: float
    p11_over_m: float
    p12_over_m: float
    p22_over_m: float
    steps: int = 0


@dataclass(frozen=True)
class BranchPoint:
    """A corrected point on the scaled curve together with its unit tangent."""

    x: np.ndarray
    tangent: np.ndarray
    step: float
