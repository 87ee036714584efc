"""Configuration management for the khecke engine."""
import os
import re
from functools import lru_cache
from typing import Any, Literal

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from khecke.infrastructure.constants import (
    DEFAULT_EXTRA_LENGTH,
    DEFAULT_HTTP_PORT,
    DEFAULT_MAX_VISITED_WORDS,
    DEFAULT_PROGRESS_INTERVAL,
    DEFAULT_URT_BOUND,
    SERVICE_NAME,
)


def _default_jobs() -> int:
    return os.cpu_count() or 1


class Settings(BaseSettings):
    """Engine settings, read from ``KHECKE_*`` environment variables and ``.env``."""

    model_config = SettingsConfigDict(
        env_prefix="KHECKE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application settings
    version: str = "0.1.0"
    environment: Literal["development", "testing", "production", "docker"] = "development"
    debug: bool = False

    # Server settings (khecke serve)
    service_name: str = SERVICE_NAME
    host: str = "127.0.0.1"
    http_port: int = Field(default=DEFAULT_HTTP_PORT, gt=0, le=65535)

    # Logging settings
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    log_format: Literal["json", "console"] = "console"

    # Worker parallelism; --jobs overrides
    jobs: int = Field(default_factory=_default_jobs, ge=1)

    # Search settings
    extra_length: int = Field(default=DEFAULT_EXTRA_LENGTH, ge=0)
    max_visited_words: int = Field(default=DEFAULT_MAX_VISITED_WORDS, ge=1)
    urt_bound: int = Field(default=DEFAULT_URT_BOUND, ge=1)
    progress_interval: int = Field(default=DEFAULT_PROGRESS_INTERVAL, ge=1)

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: Any) -> Any:
        """Accept ``KHECKE_LOG_LEVEL=info`` as well as ``INFO``."""
        if isinstance(v, str):
            return v.upper()
        return v

    @model_validator(mode="after")
    def validate_service_name(self) -> "Settings":
        """The service name doubles as a metrics label and must be DNS-safe."""
        name = self.service_name
        if not re.match(r"^[a-z0-9]([a-z0-9-]*[a-z0-9])?$", name):
            raise ValueError(
                f"service name must be DNS-safe: lowercase, alphanumeric, "
                f"hyphens only, must start and end with letter or number (got: {name})"
            )
        if len(name) > 63:
            raise ValueError(f"service name exceeds 63 character limit (got: {len(name)} characters)")
        return self


@lru_cache
def get_settings() -> Settings:
    """Get cached engine settings."""
    return Settings()
