from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass
class LyapcertError(Exception):
    code: str
    message: str
    exit_code: int = 2
    detail: Any | None = None
    cause: Exception | None = None

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "error": {
                "code": self.code,
                "message": self.message,
            }
        }
        if self.detail is not None:
            payload["error"]["detail"] = self.detail
        return payload


class ParameterError(LyapcertError):
    def __init__(self, message: str = "Invalid parameter", *, detail: Any | None = None):
        super().__init__(code="INVALID_PARAMETER", message=message, exit_code=2, detail=detail)


class ConfigError(LyapcertError):
    def __init__(self, message: str = "Invalid configuration", *, detail: Any | None = None):
        super().__init__(code="CONFIG_INVALID", message=message, exit_code=2, detail=detail)


class NoRealRootsError(LyapcertError):
    def __init__(self, message: str = "No real roots", *, detail: Any | None = None):
        super().__init__(code="NO_REAL_ROOTS", message=message, exit_code=2, detail=detail)


class PoleError(LyapcertError):
    def __init__(self, message: str = "Evaluation at a pole", *, detail: Any | None = None):
        super().__init__(code="POLE", message=message, exit_code=2, detail=detail)


class CertificateError(LyapcertError):
    def __init__(self, message: str = "Certificate check failed", *, detail: Any | None = None):
        super().__init__(code="CERTIFICATE_INVALID", message=message, exit_code=3, detail=detail)


class ConvergenceError(LyapcertError):
    def __init__(self, message: str = "Iteration did not converge", *, detail: Any | None = None):
        super().__init__(code="NO_CONVERGENCE", message=message, exit_code=3, detail=detail)


class DivergenceError(LyapcertError):
    def __init__(
        self,
        message: str = "Trajectory diverged",
        *,
        detail: Any | None = None,
        last_finite: Any | None = None,
    ):
        if last_finite is not None:
            detail = {**(detail or {}), "last_finite": last_finite}
        super().__init__(code="DIVERGENCE", message=message, exit_code=3, detail=detail)
        self.last_finite = last_finite


class ContinuationStallError(LyapcertError):
    def __init__(
        self,
        message: str = "Continuation stalled",
        *,
        detail: Any | None = None,
        last_point: Any | None = None,
    ):
        super().__init__(code="CONTINUATION_STALL", message=message, exit_code=3, detail=detail)
        self.last_point = last_point
