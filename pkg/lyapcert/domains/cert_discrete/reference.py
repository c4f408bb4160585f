"""Textbook rates the certified ones are compared against."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from lyapcert.domains.problem.model import ProblemClass


@dataclass(frozen=True)
class ReferenceBounds:
    kappa: float
    # Per-step factor squared of GD with alpha = 2/(m+L), applied to (L/2)||x0 - x*||^2.
    gd_factor: float
    # Per-step factor of Nesterov's method with the standard parameters.
    nesterov_factor: float
    # Best factor any first-order method can guarantee on F_{m,L}.
    lower_factor: float


def reference_bounds(pc: ProblemClass) -> ReferenceBounds:
    q = 1.0 / pc.kappa
    sq = math.sqrt(q)
    return ReferenceBounds(
        kappa=pc.kappa,
        gd_factor=((1.0 - q) / (1.0 + q)) ** 2,
        nesterov_factor=1.0 - sq,
        lower_factor=((1.0 - sq) / (1.0 + sq)) ** 2,
    )


def nesterov_textbook_constant(pc: ProblemClass, f_gap0: float, x0: np.ndarray, x_star: np.ndarray) -> float:
    """Constant of the classical bound for the standard method started with y0 = x0."""
    e = x0 - x_star
    return float(f_gap0 + 0.5 * pc.m * e @ e)


def gd_textbook_bound(pc: ProblemClass, x0: np.ndarray, x_star: np.ndarray, k: int) -> float:
    e = x0 - x_star
    return float(0.5 * pc.L * reference_bounds(pc).gd_factor ** k * e @ e)
