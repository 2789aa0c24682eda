"""
Runtime configuration.

Values come from the environment; a local .env file is loaded first so that
developers can keep their overrides next to the checkout.
"""

import os

from dotenv import load_dotenv
from pydantic import BaseModel, field_validator

load_dotenv()

DEFAULT_DB_PATH = "flatcomp_runs.json"


class Settings(BaseModel):
    budget: int = 2_000_000
    log_level: str = "INFO"
    log_json: bool = False
    db_path: str = DEFAULT_DB_PATH
    cache_size: int = 256

    @field_validator("budget", "cache_size")
    @classmethod
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError("must be a positive integer")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level '{v}'")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            budget=int(os.getenv("QC_BUDGET", "2000000")),
            log_level=os.getenv("QC_LOG_LEVEL", "INFO"),
            log_json=os.getenv("QC_LOG_JSON", "0") == "1",
            db_path=os.getenv("QC_DB_PATH", DEFAULT_DB_PATH),
            cache_size=int(os.getenv("QC_CACHE_SIZE", "256")),
        )


settings = Settings.from_env()
