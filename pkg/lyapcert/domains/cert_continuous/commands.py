from __future__ import annotations

import logging

import click

from lyapcert.core.config import Settings
from lyapcert.core.errors.exceptions import LyapcertError, ParameterError
from lyapcert.core.output import write_csv, write_json
from lyapcert.domains.cert_continuous.schemas import TABLE_COLUMNS, OdeCertifyRecord, table_row
from lyapcert.domains.cert_continuous.service import appendix_max_rate, certify_ode, certify_ode_appendix

logger = logging.getLogger(__name__)

DEFAULT_KAPPAS = ",".join(f"1e{k}" for k in range(1, 10))


def parse_kappas(raw: str) -> list[float]:
    try:
        values = [float(item) for item in raw.split(",") if item.strip()]
    except ValueError as exc:
        raise ParameterError("--kappas must be a comma separated list of numbers", detail={"kappas": raw}) from exc
    if not values:
        raise ParameterError("--kappas is empty")
    return values


@click.command("certify-ode")
@click.option("--m", "m", type=float, required=True)
@click.option("--b-bar", type=float, default=None, help="Friction coefficient; omit with --appendix.")
@click.option("--L", "L", type=float, default=None, help="Smoothness constant, needed by --appendix.")
@click.option("--appendix", is_flag=True, help="Use the sigma > 0 certificate of largest rate for F_{m,L}.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def certify_ode_command(
    settings: Settings,
    m: float,
    b_bar: float | None,
    L: float | None,
    appendix: bool,
    out: str | None,
) -> None:
    """Certify the damped oscillator ODE."""
    if appendix:
        if L is None:
            raise ParameterError("--appendix needs --L")
        cert = certify_ode_appendix(m, L, tol=settings.psd_tol)
    elif b_bar is not None:
        cert = certify_ode(m, b_bar, tol=settings.psd_tol)
    else:
        raise ParameterError("Pass --b-bar or --appendix")
    params = {"m": m, "b_bar": b_bar, "L": L, "appendix": appendix, "psd_tol": settings.psd_tol}
    write_json(OdeCertifyRecord.from_certificate(cert, params), out)


@click.command("table")
@click.option("--kappas", default=DEFAULT_KAPPAS, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def table_command(settings: Settings, kappas: str, out: str | None) -> None:
    """Largest certified ODE rate for each condition number."""
    rows = []
    for kappa in parse_kappas(kappas):
        try:
            rows.append(table_row(appendix_max_rate(kappa, tol=settings.psd_tol)))
        except LyapcertError as exc:
            logger.warning("table: kappa=%g failed: %s", kappa, exc)
            rows.append({"kappa": kappa, "error": exc.code})
    write_csv("table", {"kappas": kappas, "psd_tol": settings.psd_tol}, TABLE_COLUMNS, rows, out)
