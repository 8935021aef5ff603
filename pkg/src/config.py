"""Runtime settings with grouped models.

Loads configuration from environment variables and .env file using python-dotenv.
All settings can be overridden via environment variables using flat naming
(e.g., EXCURSION_THREADS). Experiment definitions live in TOML files and are
handled by ``src.harness.config``; this module only covers the process-wide knobs.
"""

import logging
import os
from pathlib import Path
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from .exceptions import ConfigError

# Project root directory
BASE_DIR = Path(__file__).resolve().parent.parent

logger = logging.getLogger(__name__)

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


# ===== Configuration Groups =====


class RuntimeConfig(BaseModel):
    """Worker pool, logging and output location."""

    threads: int = Field(default=1, description="Default number of replicate workers", ge=1)
    log_level: LogLevel = Field(default="INFO", description="Root log level")
    output_dir: Path = Field(default=BASE_DIR / "output", description="Default report directory")

    @classmethod
    def from_env(cls) -> "RuntimeConfig":
        """Load configuration from environment variables."""
        return cls(
            threads=int(os.getenv("EXCURSION_THREADS", "1")),
            log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
            output_dir=Path(os.getenv("EXCURSION_OUTPUT_DIR", str(BASE_DIR / "output"))),
        )


class NumericsConfig(BaseModel):
    """Quadrature budgets and Monte Carlo fallbacks."""

    quad_limit: int = Field(default=200, description="Base subdivision limit for scipy quad", ge=10)
    quad_attempts: int = Field(
        default=4, description="Attempts, each doubling the subdivision limit", ge=1, le=10
    )
    mc_fallback_draws: int = Field(
        default=200_000, description="Draws of X when quadrature does not converge (0 disables)", ge=0
    )
    max_truncation: int = Field(
        default=10_000, description="Cap for the default series truncation K", ge=1
    )

    @classmethod
    def from_env(cls) -> "NumericsConfig":
        """Load configuration from environment variables."""
        return cls(
            quad_limit=int(os.getenv("EXCURSION_QUAD_LIMIT", "200")),
            quad_attempts=int(os.getenv("EXCURSION_QUAD_ATTEMPTS", "4")),
            mc_fallback_draws=int(os.getenv("EXCURSION_MC_FALLBACK_DRAWS", "200000")),
            max_truncation=int(os.getenv("EXCURSION_MAX_TRUNCATION", "10000")),
        )


# ===== Main Settings Class =====


class Settings(BaseModel):
    """Main application settings with grouped configuration.

    Example: EXCURSION_THREADS=8 LOG_LEVEL=DEBUG excursion-kit experiment ...
    """

    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)

    def __init__(self, **data):
        """Initialize settings by loading from .env file and environment variables."""
        env_file = BASE_DIR / ".env"
        if env_file.exists():
            load_dotenv(env_file, override=False)
            logger.debug(f"Loaded environment from {env_file}")

        if not data:
            try:
                data = {
                    "runtime": RuntimeConfig.from_env(),
                    "numerics": NumericsConfig.from_env(),
                }
            except (ValidationError, ValueError) as e:
                raise ConfigError(f"invalid environment settings: {e}") from e

        super().__init__(**data)

    def reload(self) -> None:
        """Re-read the environment, e.g. after a test changed it."""
        fresh = Settings()
        self.runtime = fresh.runtime
        self.numerics = fresh.numerics
        logger.debug(f"Settings reloaded: threads={self.runtime.threads}")


# Global config instance
Config = Settings()
