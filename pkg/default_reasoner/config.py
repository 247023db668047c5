"""
Runtime configuration.

Values come from the environment (optionally a ``.env`` file) and are
validated once.  Command-line flags override single fields through
``Settings.model_copy(update=...)``.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

DEFAULT_CAPACITY = 24
DEFAULT_ORACLE_EPS = "1/100,1/10000,1/1000000"


def parse_eps_ladder(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1/100,1/10000"`` into exact rationals, each strictly inside (0, 1)."""
    ladder = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        value = Fraction(chunk)
        if not 0 < value < 1:
            raise ValueError(f"epsilon {chunk} is not in (0, 1)")
        ladder.append(value)
    if not ladder:
        raise ValueError("epsilon ladder is empty")
    return tuple(ladder)


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_atoms: int = Field(DEFAULT_CAPACITY, ge=1, le=30)
    log_level: str = "WARNING"
    oracle_eps: str = DEFAULT_ORACLE_EPS
    seed: int = 7
    parallel_compare: bool = True

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return value

    @field_validator("oracle_eps")
    @classmethod
    def _valid_ladder(cls, value: str) -> str:
        parse_eps_ladder(value)
        return value

    @property
    def eps_ladder(self) -> tuple[Fraction, ...]:
        return parse_eps_ladder(self.oracle_eps)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv()
    return Settings(
        max_atoms=int(os.getenv("EBF_MAX_ATOMS", str(DEFAULT_CAPACITY))),
        log_level=os.getenv("EBF_LOG_LEVEL", "WARNING"),
        oracle_eps=os.getenv("EBF_ORACLE_EPS", DEFAULT_ORACLE_EPS),
        seed=int(os.getenv("EBF_SEED", "7")),
        parallel_compare=os.getenv("EBF_PARALLEL_COMPARE", "true").lower() == "true",
    )
