from __future__ import annotations

from pydantic import BaseModel, Field


class Witness(BaseModel):
    p11: float
    p12: float
    p22: float
    rho_sq: float
    lambda_max: float
    source: str = Field(..., description="'sample' or 'analytic'")


class ScanReport(BaseModel):
    kappa: float
    c: float
    delta: float
    beta: float
    gamma: float
    n_samples: int
    seed: int
    feasible: bool
    evidence: str = "random probe; a negative outcome is evidence, not proof"
    # Least lambda_max(T-hat) over sampled (P-hat >= 0, rho^2).
    min_lambda_max: float
    witness: Witness
    # Small-step limit of t11 / delta at the continuous certificate with b_bar = 2; positive means contradiction.
    contradiction: float
