from __future__ import annotations

import csv
import io
import logging
from collections.abc import Iterable, Mapping
from typing import Any, TypeVar

import click
from pydantic import BaseModel

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def params_line(command: str, params: Mapping[str, Any]) -> str:
    body = " ".join(f"{key}={format_value(params[key])}" for key in sorted(params))
    return f"# lyapcert {command} {body}".rstrip()


def render_csv(
    command: str,
    params: Mapping[str, Any],
    columns: list[str],
    rows: Iterable[Mapping[str, Any]],
) -> str:
    buf = io.StringIO()
    buf.write(params_line(command, params) + "\r\n")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(col)) for col in columns])
    return buf.getvalue()


def parse_csv(text: str) -> tuple[str, list[dict[str, str]]]:
    """Split rendered CSV into its parameter comment line and its data rows."""
    lines = text.splitlines()
    comment = lines[0] if lines and lines[0].startswith("#") else ""
    body = lines[1:] if comment else lines
    return comment, list(csv.DictReader(body))


def render_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def read_json(cls: type[M], text: str) -> M:
    return cls.model_validate_json(text)


def emit(text: str, out: str | None) -> None:
    """Write command output to ``out`` or, when None, to stdout."""
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    logger.info("wrote %s", out)


def write_csv(
    command: str,
    params: Mapping[str, Any],
    columns: list[str],
    rows: Iterable[Mapping[str, Any]],
    out: str | None = None,
) -> None:
    emit(render_csv(command, params, columns, rows), out)


def write_json(model: BaseModel, out: str | None = None) -> None:
    emit(render_json(model), out)
