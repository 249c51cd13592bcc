import logging
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables from .env file
load_dotenv()

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"

ENV_PREFIX = "HECKEQ_"


class Settings(BaseModel):
    """Process-wide settings, read from HECKEQ_* environment variables."""

    log_level: str = "INFO"
    default_order: int = Field(default=20, ge=0)
    seed: int = Field(default=20211, ge=0)
    max_precision_rounds: int = Field(default=6, ge=1)
    random_instances: int = Field(default=25, ge=1)
    api_host: str = "127.0.0.1"
    api_port: int = 8000


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Build the settings from the environment.

    Returns:
        Settings with every HECKEQ_<FIELD> variable applied
    """
    values = {}
    for name in Settings.model_fields:
        raw = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
        if raw is not None:
            values[name] = raw
    return Settings(**values)


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging once for an entry point."""
    chosen = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, chosen, logging.INFO),
        format=LOG_FORMAT,
        datefmt=LOG_DATEFMT,
    )
