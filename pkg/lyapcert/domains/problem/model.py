from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Family(str, Enum):
    NESTEROV = "nesterov"
    HEAVY_BALL = "heavy_ball"
    GD = "gd"
    GENERAL = "general"


@dataclass(frozen=True)
class ProblemClass:
    """The class F_{m,L} of m-strongly convex, L-smooth functions."""

    m: float
    L: float

    @property
    def kappa(self) -> float:
        return self.L / self.m


@dataclass(frozen=True)
class MethodParams:
    """Step size alpha, momentum beta, extrapolation gamma of the three-parameter family."""

    alpha: float
    beta: float
    gamma: float

    @classmethod
    def nesterov(cls, alpha: float, beta: float) -> "MethodParams":
        return cls(alpha=alpha, beta=beta, gamma=beta)

    @classmethod
    def heavy_ball(cls, alpha: float, beta: float) -> "MethodParams":
        return cls(alpha=alpha, beta=beta, gamma=0.0)

    @classmethod
    def gd(cls, alpha: float) -> "MethodParams":
        return cls(alpha=alpha, beta=0.0, gamma=0.0)

    @property
    def family(self) -> Family:
        if self.beta == 0.0 and self.gamma == 0.0:
            return Family.GD
        if self.gamma == self.beta:
            return Family.NESTEROV
        if self.gamma == 0.0:
            return Family.HEAVY_BALL
        return Family.GENERAL


@dataclass(frozen=True)
class NondimParams:
    """delta = sqrt(m alpha), beta = 1 - b delta and, once a rate is known, rho^2 = 1 - r delta."""

    delta: float
    b: float
    r: float | None = None

    @property
    def beta(self) -> float:
        return 1.0 - self.b * self.delta

    @property
    def rho_sq(self) -> float | None:
        if self.r is None:
            return None
        return 1.0 - self.r * self.delta


@dataclass(frozen=True)
class ODEParams:
    b_bar: float
    m: float
