from __future__ import annotations

import logging
from dataclasses import asdict
from typing import Any

import click
import numpy as np

from lyapcert.core.config import Settings
from lyapcert.core.errors.exceptions import ParameterError
from lyapcert.core.output import write_csv
from lyapcert.domains.cert_continuous.service import certify_ode, certify_ode_appendix
from lyapcert.domains.cert_discrete.service import certify, optimal_params
from lyapcert.domains.dynamics.model import LimitConvention, ProblemKind
from lyapcert.domains.dynamics.objectives import make_objective
from lyapcert.domains.dynamics.service import limit_study, run_discrete, run_ode
from lyapcert.domains.problem.model import MethodParams, ProblemClass
from lyapcert.domains.problem.service import validate_problem

logger = logging.getLogger(__name__)

METHODS = ["nesterov", "gd", "heavyball", "ode"]
DEFAULT_H = "1e-3,2e-3,5e-3,1e-2,2e-2,5e-2,1e-1"


def _method_params(method: str, pc: ProblemClass, alpha: float | None, beta: float | None) -> MethodParams:
    if method == "gd":
        return MethodParams.gd(1.0 / pc.L if alpha is None else alpha)
    base = optimal_params(pc)
    a = base.alpha if alpha is None else alpha
    b = base.beta if beta is None else beta
    if method == "heavyball":
        return MethodParams.heavy_ball(alpha=a, beta=b)
    return MethodParams.nesterov(alpha=a, beta=b)


def _rows(
    index_name: str,
    index: np.ndarray,
    f_gap: np.ndarray,
    V: np.ndarray | None,
    bound: np.ndarray | None,
    every: int,
) -> list[dict[str, Any]]:
    rows = []
    for j in range(0, len(index), every):
        row: dict[str, Any] = {index_name: index[j].item(), "f_gap": float(f_gap[j])}
        if V is not None and bound is not None:
            row["V"] = float(V[j])
            row["bound"] = float(bound[j])
        rows.append(row)
    return rows


@click.command("simulate")
@click.option("--method", type=click.Choice(METHODS), required=True)
@click.option("--problem", type=click.Choice([k.value for k in ProblemKind]), default="quadratic", show_default=True)
@click.option("--m", "m", type=float, default=1.0, show_default=True)
@click.option("--L", "L", type=float, default=100.0, show_default=True)
@click.option("--dim", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--steps", type=click.IntRange(min=1), default=500, show_default=True)
@click.option("--t-end", type=float, default=10.0, show_default=True)
@click.option("--b-bar", type=float, default=2.0, show_default=True)
@click.option("--appendix", is_flag=True, help="ODE only: use the sigma > 0 certificate for F_{m,L}.")
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--every", type=click.IntRange(min=1), default=1, show_default=True, help="Keep every n-th row.")
@click.option("--seed", type=int, default=None, help="Defaults to LYAPCERT_SEED.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def simulate_command(
    settings: Settings,
    method: str,
    problem: str,
    m: float,
    L: float,
    dim: int,
    steps: int,
    t_end: float,
    b_bar: float,
    appendix: bool,
    alpha: float | None,
    beta: float | None,
    every: int,
    seed: int | None,
    out: str | None,
) -> None:
    """Run a method or the ODE and evaluate its Lyapunov function along the trajectory."""
    seed = settings.seed if seed is None else seed
    pc = validate_problem(m, L)
    obj = make_objective(ProblemKind(problem), pc.m, pc.L, dim, seed)
    rng = np.random.default_rng(seed)
    x0 = obj.x_star + rng.standard_normal(dim)
    params: dict[str, Any] = {
        "method": method, "problem": problem, "m": m, "L": L, "dim": dim, "seed": seed, "every": every,
    }

    if method == "ode":
        if appendix:
            cert = certify_ode_appendix(pc.m, pc.L, tol=settings.psd_tol)
        else:
            cert = certify_ode(pc.m, b_bar, tol=settings.psd_tol)
        traj = run_ode(obj, cert.b_bar, x0, np.zeros(dim), t_end, certificate=cert)
        params.update({"b_bar": cert.b_bar, "appendix": appendix, "t_end": t_end, "h_int": traj.h_int})
        index_name, index = "t", traj.t
    else:
        if appendix:
            raise ParameterError("--appendix applies to --method ode only")
        mp = _method_params(method, pc, alpha, beta)
        # No certificate of this form exists for Heavy Ball.
        cert = None if method == "heavyball" else certify(pc, mp, tol=settings.psd_tol)
        traj = run_discrete(obj, mp, x0, n_steps=steps, certificate=cert)
        params.update({"alpha": mp.alpha, "beta": mp.beta, "gamma": mp.gamma, "steps": steps})
        index_name, index = "k", traj.k

    rows = _rows(index_name, index, traj.f_gap, traj.V, traj.bound, every)
    if traj.log_V is not None:
        columns = [index_name, "f_gap", "V", "bound", "max_violation"]
        rows.append({index_name: "summary", "max_violation": traj.max_violation()})
    else:
        columns = [index_name, "f_gap"]
    logger.info("simulate: method=%s rows=%d", method, len(rows))
    write_csv("simulate", params, columns, rows, out)


@click.command("limit")
@click.option("--b-bar", type=float, default=2.0, show_default=True)
@click.option("--m", "m", type=float, default=1.0, show_default=True)
@click.option("--h", "h_list", default=DEFAULT_H, show_default=True, help="Comma separated step sizes.")
@click.option(
    "--convention",
    type=click.Choice([c.value for c in LimitConvention]),
    default=LimitConvention.FIXED_B.value,
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def limit_command(b_bar: float, m: float, h_list: str, convention: str, out: str | None) -> None:
    """Discrete rates and certificates against their small-step limits."""
    try:
        hs = [float(item) for item in h_list.split(",") if item.strip()]
    except ValueError as exc:
        raise ParameterError("--h must be a comma separated list of numbers", detail={"h": h_list}) from exc
    report = limit_study(b_bar, m, hs, LimitConvention(convention))
    rows: list[dict[str, Any]] = [asdict(row) for row in report.rows]
    rows.append({"h": "summary", "slope": report.slope, "K": report.K})
    write_csv(
        "limit",
        {"b_bar": b_bar, "m": m, "h": h_list, "convention": convention, "r_bar": report.r_bar},
        ["h", "delta", "r_h", "r_error", "p_error", "slope", "K"],
        rows,
        out,
    )
