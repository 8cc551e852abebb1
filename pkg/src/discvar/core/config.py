"""Runtime settings for the discvar kernel and CLI.

Values come from the environment (``DISCVAR_*``) or a local ``.env`` file.
"""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class DiscVarSettings(BaseSettings):
    # Buchberger's coprime criterion is always applied; this toggles the chain criterion
    chain_criterion: bool = True

    # Finite-field oracle
    enumeration_guard: int = 10_000_000
    oracle_primes: list[int] = Field(default_factory=lambda: [5, 7])
    max_retry_prime: int = 31
    saturation_certificate_limit: int = 10

    # Component computations after preprocessing are independent
    parallel_components: bool = True
    max_workers: int = 4

    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        extra="ignore",
        env_prefix="DISCVAR_",
        env_file=".env",
        env_file_encoding="utf-8",
    )

    @field_validator("log_level")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        return v.strip().upper()

    @field_validator("max_workers", "enumeration_guard", "saturation_certificate_limit")
    @classmethod
    def positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be a positive integer")
        return v


@lru_cache
def get_settings() -> DiscVarSettings:
    return DiscVarSettings()  # type: ignore[call-arg]
