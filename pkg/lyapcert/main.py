import logging
import sys
from pathlib import Path

import click

# Load project-root .env if present.
_env_path = Path(__file__).resolve().parents[1] / ".env"
if _env_path.exists():
    try:
        from dotenv import load_dotenv  # type: ignore
    except ImportError:
        print(
            "WARNING: .env file exists but python-dotenv is not installed. "
            "Install python-dotenv or export the LYAPCERT_* variables yourself.",
            file=sys.stderr,
        )
    else:
        # Prefer .env values over inherited shell env vars for local runs.
        load_dotenv(dotenv_path=_env_path, override=True)

from lyapcert.core.config import Settings
from lyapcert.core.errors.handlers import register_error_handler
from lyapcert.domains.cert_continuous.commands import certify_ode_command, table_command
from lyapcert.domains.cert_discrete.commands import certify_command, curve_command, probe_command
from lyapcert.domains.dynamics.commands import limit_command, simulate_command
from lyapcert.domains.negative_results.commands import hb_scan_command

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def create_cli() -> click.Group:
    @click.group(name="lyapcert")
    @click.option("--verbose", is_flag=True, help="Log one line per major stage to stderr.")
    @click.pass_context
    def cli(ctx: click.Context, verbose: bool) -> None:
        """Lyapunov certificates for momentum methods and their ODE limit."""
        settings = Settings.from_env()
        level = logging.INFO if verbose else getattr(logging, settings.log_level, logging.WARNING)
        logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT)
        logging.getLogger("lyapcert").setLevel(level)
        ctx.obj = settings

    register_error_handler(cli)

    cli.add_command(certify_command)
    cli.add_command(curve_command)
    cli.add_command(probe_command)
    cli.add_command(certify_ode_command)
    cli.add_command(table_command)
    cli.add_command(simulate_command)
    cli.add_command(limit_command)
    cli.add_command(hb_scan_command)

    return cli


cli = create_cli()
