from __future__ import annotations

import os

from pydantic import BaseModel

from lyapcert.core.errors.exceptions import ConfigError


def _env_int(name: str, default: int) -> int:
    raw = (os.getenv(name) or "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer", detail={"variable": name, "value": raw}) from exc


def _env_float(name: str, default: float) -> float:
    raw = (os.getenv(name) or "").strip()
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be a number", detail={"variable": name, "value": raw}) from exc


class Settings(BaseModel):
    seed: int = 42
    psd_tol: float = 1e-9
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            seed=_env_int("LYAPCERT_SEED", 42),
            psd_tol=_env_float("LYAPCERT_PSD_TOL", 1e-9),
            log_level=(os.getenv("LYAPCERT_LOG_LEVEL") or "WARNING").strip().upper(),
        )
