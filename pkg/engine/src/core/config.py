"""Reads configuration from environment variables or .env file."""

import logging
from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    """Engine settings loaded from environment variables or the ``engine/.env`` file.

    Every field has a default so the CLI runs without any environment. The
    ``DEFAULT_*`` values seed `SuiteConfig` before config files and flags are applied.
    """

    model_config = SettingsConfigDict(
        env_file=str(Path(__file__).parent.parent.parent / ".env"),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Model defaults
    DEFAULT_N_MAX: int = Field(default=3, ge=0)
    DEFAULT_GRAM: str = "2"
    DEFAULT_SEED: int = 0
    DEFAULT_FORMAT: str = "text"

    # Enumeration bounds
    D_MAX: int = Field(default=4, gt=0)
    K_MAX: int = Field(default=4, gt=0)
    WORD_LENGTH_MAX: int = Field(default=3, gt=0)
    CONFLUENCE_SEEDS: int = Field(default=100, gt=0)

    # Logging
    LOG_LEVEL: str = "WARNING"

    @field_validator("DEFAULT_GRAM")
    @classmethod
    def _validate_default_gram(cls, v: str) -> str:
        rows = [row.split() for row in v.split(";") if row.strip()]
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("DEFAULT_GRAM must be a square matrix written as 'a b; c d'")
        if any(rows[i][j] != rows[j][i] for i in range(len(rows)) for j in range(i)):
            raise ValueError("DEFAULT_GRAM must be symmetric")
        return v

    @field_validator("DEFAULT_FORMAT")
    @classmethod
    def _validate_default_format(cls, v: str) -> str:
        if v not in ("text", "json"):
            raise ValueError("DEFAULT_FORMAT must be 'text' or 'json'")
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def _validate_log_level(cls, v: str) -> str:
        if v.upper() not in logging.getLevelNamesMapping():
            raise ValueError(f"LOG_LEVEL {v!r} is not a logging level name")
        return v.upper()

    @property
    def log_level_number(self) -> int:
        """Return ``LOG_LEVEL`` as the numeric level understood by `logging`."""
        return logging.getLevelNamesMapping()[self.LOG_LEVEL]


env = Config()
