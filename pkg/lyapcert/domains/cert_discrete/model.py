from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from lyapcert.domains.lmi.model import Sym2, Sym3
from lyapcert.domains.problem.model import MethodParams, NondimParams, ProblemClass


class RootKind(str, Enum):
    DISTINCT = "distinct"
    DOUBLE = "double"
    COMPLEX = "complex"


@dataclass(frozen=True)
class QuadraticRoots:
    kind: RootKind
    b_minus: float | None = None
    b_plus: float | None = None


@dataclass(frozen=True)
class BRange:
    b_min: float
    b_max: float
    # Interval on beta the certificate assumes.
    beta_admissible: tuple[float, float]
    # Exact image of (b_min, b_max) under beta = 1 - b delta.
    beta_image: tuple[float, float]


@dataclass(frozen=True)
class DiscreteCertificate:
    pc: ProblemClass
    mp: MethodParams
    nd: NondimParams
    rho_sq: float
    P_hat: Sym2
    T_hat: Sym3
    valid: bool

    C0_recipe = "f(x0) - f* + (m/2) * || ((1 - r*delta)/delta) * (x0 - x_{-1}) + r * (x0 - x*) ||^2"

    @property
    def r(self) -> float:
        assert self.nd.r is not None
        return self.nd.r

    def bracket(self, f_gap: float, d_k: np.ndarray, e_k: np.ndarray) -> float:
        """f(x_k) - f* + [d_k, x_k - x*] P [d_k, x_k - x*]^T."""
        p = self.P_hat
        return float(f_gap + p.p11 * d_k @ d_k + 2.0 * p.p12 * d_k @ e_k + p.p22 * e_k @ e_k)

    def bound_constant(self, f_gap0: float, x0: np.ndarray, x_minus1: np.ndarray, x_star: np.ndarray) -> float:
        delta, r = self.nd.delta, self.r
        w = (1.0 - r * delta) / delta * (x0 - x_minus1) + r * (x0 - x_star)
        return float(f_gap0 + 0.5 * self.pc.m * w @ w)


@dataclass(frozen=True)
class ProbeReport:
    delta: float
    m: float
    n_samples: int
    radius: float
    tol: float
    seed: int
    n_improving_feasible: int
    n_feasible: int
    violations: dict[str, int]
    n_tried: int
    # Largest over samples of the smallest margin; negative when nothing is feasible.
    best_margin: float
