"""
config.py

Run options shared by the command line, the driver and the playground.
"""
from __future__ import annotations
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from cacsa.rewriting.reduction import DEFAULT_FUEL

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class CheckerConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    fuel: int = Field(default=DEFAULT_FUEL, gt=0)
    dump_constraints: bool = False
    trace: bool = False
    json_report: Optional[Path] = None
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return value
