from __future__ import annotations

from pydantic import BaseModel, Field

from lyapcert.domains.cert_continuous.model import AppendixPoint, ContinuousCertificate
from lyapcert.domains.cert_discrete.schemas import PHatEntries
from lyapcert.domains.lmi.service import eigenvalues


class OdeCertifyRecord(BaseModel):
    params: dict[str, float | bool | str | None] = Field(default_factory=dict)
    m: float
    L: float | None = None
    b_bar: float
    r_bar: float
    lam: float
    s_bar: float
    sigma: float
    P_bar_hat: PHatEntries
    T_bar_hat_eigenvalues: list[float]
    valid: bool
    C_bar_recipe: str

    @classmethod
    def from_certificate(cls, cert: ContinuousCertificate, params: dict) -> "OdeCertifyRecord":
        return cls(
            params=params,
            m=cert.m,
            L=cert.L,
            b_bar=cert.b_bar,
            r_bar=cert.r_bar,
            lam=cert.lam,
            s_bar=cert.s_bar,
            sigma=cert.sigma,
            P_bar_hat=PHatEntries(p11=cert.P_bar_hat.p11, p12=cert.P_bar_hat.p12, p22=cert.P_bar_hat.p22),
            T_bar_hat_eigenvalues=[float(v) for v in eigenvalues(cert.T_bar_hat)],
            valid=cert.valid,
            C_bar_recipe=cert.C_bar_recipe,
        )


TABLE_COLUMNS = [
    "kappa",
    "b_bar_minus_2",
    "r_bar_minus_1",
    "s_bar",
    "p11_over_m_minus_half",
    "p12_over_m_minus_half",
    "p22_over_m_minus_half",
    "r_bar",
    "steps",
    "error",
]


def table_row(point: AppendixPoint) -> dict[str, float | int]:
    return {
        "kappa": point.kappa,
        "b_bar_minus_2": point.b_bar - 2.0,
        "r_bar_minus_1": point.r_bar - 1.0,
        "s_bar": point.s_bar,
        "p11_over_m_minus_half": point.p11_over_m - 0.5,
        "p12_over_m_minus_half": point.p12_over_m - 0.5,
        "p22_over_m_minus_half": point.p22_over_m - 0.5,
        "r_bar": point.r_bar,
        "steps": point.steps,
    }
