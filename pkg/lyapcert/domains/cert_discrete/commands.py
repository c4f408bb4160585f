from __future__ import annotations

import logging

import click
import numpy as np

from lyapcert.core.config import Settings
from lyapcert.core.errors.exceptions import ParameterError
from lyapcert.core.output import write_csv, write_json
from lyapcert.domains.cert_continuous.service import solve_r_bar
from lyapcert.domains.cert_discrete.schemas import CERTIFY_COLUMNS, CertifyRecord, ProbeRecord
from lyapcert.domains.cert_discrete.service import b_range, certify, local_optimality_probe, optimal_params, solve_r
from lyapcert.domains.problem.model import MethodParams
from lyapcert.domains.problem.service import validate_problem

logger = logging.getLogger(__name__)

FORMAT = click.Choice(["csv", "json"])
# Window for the limit curve, which has no finite (b_min, b_max).
LIMIT_CURVE_HALF_WIDTH = 4.4


@click.command("certify")
@click.option("--m", "m", type=float, required=True, help="Strong convexity constant.")
@click.option("--L", "L", type=float, required=True, help="Smoothness constant.")
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--optimal", is_flag=True, help="Use alpha = 1/L, beta = (1 - sqrt(m/L)) / (1 + sqrt(m/L)).")
@click.option("--format", "fmt", type=FORMAT, default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def certify_command(
    settings: Settings,
    m: float,
    L: float,
    alpha: float | None,
    beta: float | None,
    optimal: bool,
    fmt: str,
    out: str | None,
) -> None:
    """Certify a Nesterov-family method on F_{m,L}."""
    pc = validate_problem(m, L)
    if optimal:
        mp = optimal_params(pc)
    elif alpha is not None and beta is not None:
        mp = MethodParams.nesterov(alpha=alpha, beta=beta)
    else:
        raise ParameterError("Pass either --alpha and --beta or --optimal")
    logger.info("certify: m=%g L=%g alpha=%.17g beta=%.17g", m, L, mp.alpha, mp.beta)

    cert = certify(pc, mp, tol=settings.psd_tol)
    params = {"m": m, "L": L, "alpha": mp.alpha, "beta": mp.beta, "optimal": optimal, "psd_tol": settings.psd_tol}
    record = CertifyRecord.from_certificate(cert, params)
    if fmt == "json":
        write_json(record, out)
    else:
        write_csv("certify", params, CERTIFY_COLUMNS, [record.flat()], out)


@click.command("curve")
@click.option("--delta", type=float, required=True, help="delta in (0, 1), or 0 for the continuous limit.")
@click.option("--samples", type=click.IntRange(min=2), default=400, show_default=True)
@click.option("--b-lo", type=float, default=None)
@click.option("--b-hi", type=float, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def curve_command(delta: float, samples: int, b_lo: float | None, b_hi: float | None, out: str | None) -> None:
    """Sample the rate curve r(b) and mark its double-root point."""
    if delta == 0.0:
        lo, hi = -LIMIT_CURVE_HALF_WIDTH, LIMIT_CURVE_HALF_WIDTH

        def rate(b: float) -> float:
            return solve_r_bar(b)

        marker_b = 2.0
    else:
        window = b_range(delta)
        pad = 0.1 * (window.b_max - window.b_min)
        lo, hi = window.b_min - pad, window.b_max + pad

        def rate(b: float) -> float:
            return solve_r(b, delta)

        marker_b = 2.0 / (1.0 + delta)

    lo = lo if b_lo is None else b_lo
    hi = hi if b_hi is None else b_hi
    if not lo < hi:
        raise ParameterError("b_lo must be below b_hi", detail={"b_lo": lo, "b_hi": hi})

    rows = [{"b": float(b), "r": rate(float(b)), "marker": False} for b in np.linspace(lo, hi, samples)]
    rows.append({"b": marker_b, "r": rate(marker_b), "marker": True})
    params = {"delta": delta, "samples": samples, "b_lo": lo, "b_hi": hi}
    logger.info("curve: delta=%g rows=%d", delta, len(rows))
    write_csv("curve", params, ["b", "r", "marker"], rows, out)


@click.command("probe")
@click.option("--delta", type=float, required=True)
@click.option("--samples", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--radius", type=float, default=1e-3, show_default=True)
@click.option("--tol", type=float, default=0.0, show_default=True)
@click.option("--m", "m", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=None, help="Defaults to LYAPCERT_SEED.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def probe_command(
    settings: Settings,
    delta: float,
    samples: int,
    radius: float,
    tol: float,
    m: float,
    seed: int | None,
    out: str | None,
) -> None:
    """Search the linearized constraints for a rate improvement around the optimal certificate."""
    report = local_optimality_probe(
        delta,
        samples,
        radius,
        tol,
        m=m,
        seed=settings.seed if seed is None else seed,
    )
    write_json(ProbeRecord.from_report(report), out)
