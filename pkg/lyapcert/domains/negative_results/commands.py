from __future__ import annotations

import click

from lyapcert.core.config import Settings
from lyapcert.core.output import write_json
from lyapcert.domains.negative_results.service import infeasibility_scan


@click.command("hb-scan")
@click.option("--kappa", type=float, required=True)
@click.option("--c", "c", type=float, default=1.0, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=int, default=None, help="Defaults to LYAPCERT_SEED.")
@click.option("--gamma-equals-beta", is_flag=True, help="Scan the Nesterov family instead, as a control.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def hb_scan_command(
    settings: Settings,
    kappa: float,
    c: float,
    samples: int,
    seed: int | None,
    gamma_equals_beta: bool,
    out: str | None,
) -> None:
    """Search for a Heavy-Ball certificate at an accelerated step size."""
    report = infeasibility_scan(
        kappa,
        c,
        samples,
        settings.seed if seed is None else seed,
        gamma_equals_beta=gamma_equals_beta,
        tol=settings.psd_tol,
    )
    write_json(report, out)
