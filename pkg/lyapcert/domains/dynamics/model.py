from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

Vector = np.ndarray


class ProblemKind(str, Enum):
    QUADRATIC = "quadratic"
    SOFTPLUS = "softplus"


class LimitConvention(str, Enum):
    # beta_h = 1 - b_bar sqrt(m) h
    FIXED_B = "fixed_b"
    # beta_h = (1 - sqrt(m) h) / (1 + sqrt(m) h)
    POLYAK = "polyak"


@dataclass(frozen=True)
class Objective:
    """A member of F_{m,L} with its gradient oracle and known minimizer.

    ``gap`` evaluates f(x) - f* directly so that small gaps keep their relative accuracy.
    """

    kind: ProblemKind
    dim: int
    m: float
    L: float
    grad: Callable[[Vector], Vector]
    gap: Callable[[Vector], float]
    x_star: Vector
    f_star: float
    seed: int | None = None

    def value(self, x: Vector) -> float:
        return self.f_star + self.gap(x)


def _relative_steps(log_v: np.ndarray) -> np.ndarray:
    """(V_{k+1} - V_k) / V_0 computed from log V; entries with V = 0 count as 0."""
    with np.errstate(invalid="ignore", over="ignore"):
        rel = np.exp(log_v - log_v[0])
    rel = np.where(np.isfinite(rel), rel, 0.0)
    return np.diff(rel)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Iterates x_k, divided differences d_k = (x_k - x_{k-1}) / delta and, if certified, log V_k."""

    k: np.ndarray
    x: np.ndarray
    d: np.ndarray
    f_gap: np.ndarray
    delta: float
    log_V: np.ndarray | None = None
    # C rho^{2k}
    bound: np.ndarray | None = None
    seed: int | None = None

    @property
    def V(self) -> np.ndarray | None:
        if self.log_V is None:
            return None
        with np.errstate(over="ignore"):
            return np.exp(self.log_V)

    def max_violation(self) -> float | None:
        """Largest (V_{k+1} - V_k) / V_0; nonpositive for a monotone run."""
        if self.log_V is None or len(self.log_V) < 2:
            return None
        return float(np.max(_relative_steps(self.log_V)))


@dataclass(frozen=True, eq=False)
class OdeTrajectory:
    """Samples of the first-order system in (x, v) with v = x'/sqrt(m)."""

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    f_gap: np.ndarray
    h_int: float
    log_V: np.ndarray | None = None
    # C_bar e^{-lambda t}
    bound: np.ndarray | None = None
    # f - f* + [v, x - x*] P_bar [v, x - x*]^T without the exponential weight.
    bracket: np.ndarray | None = None

    @property
    def V(self) -> np.ndarray | None:
        if self.log_V is None:
            return None
        with np.errstate(over="ignore"):
            return np.exp(self.log_V)

    def max_violation(self) -> float | None:
        if self.log_V is None or len(self.log_V) < 2:
            return None
        return float(np.max(_relative_steps(self.log_V)))


@dataclass(frozen=True)
class LimitRow:
    h: float
    delta: float
    r_h: float
    r_error: float
    p_error: float


@dataclass(frozen=True)
class LimitReport:
    b_bar: float
    m: float
    convention: LimitConvention
    r_bar: float
    rows: list[LimitRow] = field(default_factory=list)
    # Least-squares slope of log |r_h - r_bar| against log h; None when every error is 0.
    slope: float | None = None
    # max |r_h - r_bar| / h
    K: float = 0.0


@dataclass(frozen=True)
class TrajectoryLimitRow:
    h: float
    n_steps: int
    # max_k ||x_k - x(kh)||
    x_error: float
    # max_k |V_k / V_bar(kh) - 1|
    lyapunov_error: float | None = None


@dataclass(frozen=True)
class TrajectoryLimitReport:
    b_bar: float
    t_end: float
    rows: list[TrajectoryLimitRow] = field(default_factory=list)
