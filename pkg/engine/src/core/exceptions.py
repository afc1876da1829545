"""Custom exceptions for the engine.

Each base class fixes the process exit code the CLI reports when the exception
escapes a command, mirroring how status families group failures.
"""

from typing import Any

from pydantic import BaseModel


class ErrorResponse(BaseModel):
    """Standard error body written to stderr when a command aborts.

    The CLI serializes every escaping `EngineException` as ``{"detail": <message>}``
    so scripted callers can parse failures the same way they parse reports.
    """

    detail: str | dict[str, Any]


class EngineException(Exception):
    """Base class for every error the engine raises deliberately."""

    exit_code: int = 1

    def __init__(self, detail: str | dict[str, Any]):
        super().__init__(detail if isinstance(detail, str) else str(detail))
        self.detail = detail

    def to_response(self) -> ErrorResponse:
        """Return the serializable error body for this exception."""
        return ErrorResponse(detail=self.detail)


class BadRequestException(EngineException):
    """Represents a usage error: the command line or config file is malformed."""

    exit_code = 2


class UnprocessableEntityException(EngineException):
    """Represents semantically invalid input: well formed but mathematically unusable."""

    exit_code = 2


class NotFoundException(EngineException):
    """Represents a lookup miss: an unknown suite, check id, or catalogue entry."""

    exit_code = 2


class ComputationException(EngineException):
    """Represents a structured mathematical failure discovered while evaluating."""

    exit_code = 1
