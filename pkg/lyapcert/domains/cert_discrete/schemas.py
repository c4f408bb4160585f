from __future__ import annotations

from dataclasses import asdict

from pydantic import BaseModel, Field

from lyapcert.domains.cert_discrete.model import DiscreteCertificate, ProbeReport
from lyapcert.domains.lmi.service import eigenvalues


class PHatEntries(BaseModel):
    p11: float
    p12: float
    p22: float


class CertifyRecord(BaseModel):
    params: dict[str, float | bool | str | None] = Field(default_factory=dict)
    alpha: float
    beta: float
    gamma: float
    delta: float
    b: float
    r: float
    rho_sq: float
    P_hat: PHatEntries
    T_hat_eigenvalues: list[float]
    valid: bool
    C0_recipe: str

    @classmethod
    def from_certificate(cls, cert: DiscreteCertificate, params: dict) -> "CertifyRecord":
        return cls(
            params=params,
            alpha=cert.mp.alpha,
            beta=cert.mp.beta,
            gamma=cert.mp.gamma,
            delta=cert.nd.delta,
            b=cert.nd.b,
            r=cert.r,
            rho_sq=cert.rho_sq,
            P_hat=PHatEntries(p11=cert.P_hat.p11, p12=cert.P_hat.p12, p22=cert.P_hat.p22),
            T_hat_eigenvalues=[float(v) for v in eigenvalues(cert.T_hat)],
            valid=cert.valid,
            C0_recipe=cert.C0_recipe,
        )

    def flat(self) -> dict[str, float | bool]:
        lo, mid, hi = self.T_hat_eigenvalues
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
            "b": self.b,
            "r": self.r,
            "rho_sq": self.rho_sq,
            "p11": self.P_hat.p11,
            "p12": self.P_hat.p12,
            "p22": self.P_hat.p22,
            "t_eig_min": lo,
            "t_eig_mid": mid,
            "t_eig_max": hi,
            "valid": self.valid,
        }


CERTIFY_COLUMNS = [
    "alpha",
    "beta",
    "gamma",
    "delta",
    "b",
    "r",
    "rho_sq",
    "p11",
    "p12",
    "p22",
    "t_eig_min",
    "t_eig_mid",
    "t_eig_max",
    "valid",
]


class ProbeRecord(BaseModel):
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
    best_margin: float

    @classmethod
    def from_report(cls, report: ProbeReport) -> "ProbeRecord":
        return cls(**asdict(report))
