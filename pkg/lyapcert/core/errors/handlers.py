from __future__ import annotations

import json
import logging
from typing import Any

import click

from lyapcert.core.errors.exceptions import LyapcertError

logger = logging.getLogger(__name__)


def _emit(payload: dict[str, Any]) -> None:
    click.echo(json.dumps(payload), err=True)


def register_error_handler(group: click.Group) -> click.Group:
    """Wrap ``group.invoke`` so domain errors become a JSON payload on stderr and an exit code."""
    invoke = group.invoke

    def guarded_invoke(ctx: click.Context) -> Any:
        try:
            return invoke(ctx)
        except LyapcertError as exc:
            _emit(exc.to_dict())
            ctx.exit(exc.exit_code)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception:
            # Avoid leaking internal details; the traceback goes to the log only.
            logger.exception("unhandled error")
            _emit({"error": {"code": "INTERNAL", "message": "Internal error"}})
            ctx.exit(3)

    group.invoke = guarded_invoke  # type: ignore[method-assign]
    return group
