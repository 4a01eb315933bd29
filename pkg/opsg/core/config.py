"""Settings for tolerances, oracle caps, seeds and logging, selected by ENV_STATE."""
import logging
import os
from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


logger = logging.getLogger(__name__)


# ---------------------------------------------------------
# Base
# ---------------------------------------------------------
class BaseConfig(BaseSettings):
    """Reads ENV_STATE from the environment or .env.

    Attributes:
        ENV_STATE: Current environment state (dev, prod, or test)
    """

    ENV_STATE: Literal["dev", "prod", "test"] = Field(
        default="dev", description="Current environment state"
    )

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        env_ignore_empty=True,
    )


# ---------------------------------------------------------
# Global Shared Config
# ---------------------------------------------------------
class GlobalConfig(BaseConfig):
    """Global configuration shared across all environments.

    Environment-specific configs inherit from this class and can override
    values as needed.

    Attributes:
        EPS: Absolute tolerance (radians) for every angle comparison
        MAX_VALIDATED_POINTS: Largest point set checked exhaustively for general position
        ORACLE_MAX_PATH_N: Hard cap on n for the spanning-path oracle
        ORACLE_MAX_TREE_N: Hard cap on n for the spanning-tree oracle
        ORACLE_MAX_TRIANGULATION_N: Hard cap on n for the triangulation oracle
        TREE_BACKBONE_SEARCH: Let the spanning tree try other backbones when the dispatched case fails
        DEFAULT_SEED: Seed used by the random generators
        LOG_LEVEL: Level of the "opsg" logger tree
        LOG_FILE: Path of the rotating JSON log (None disables it)
    """

    EPS: float = Field(default=1e-9, gt=0, description="Angle tolerance in radians")
    MAX_VALIDATED_POINTS: int = Field(
        default=2000, ge=3, description="Exhaustive general-position check cap"
    )

    ORACLE_MAX_PATH_N: int = Field(default=10, ge=1, le=12, description="Path oracle cap")
    ORACLE_MAX_TREE_N: int = Field(default=9, ge=1, le=10, description="Tree oracle cap")
    ORACLE_MAX_TRIANGULATION_N: int = Field(
        default=9, ge=3, le=12, description="Triangulation oracle cap"
    )

    TREE_BACKBONE_SEARCH: bool = Field(
        default=False, description="Search other backbones when the dispatched one fails"
    )

    DEFAULT_SEED: int = Field(default=0, ge=0, description="Default generator seed")

    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING", description="Level of the opsg logger tree"
    )
    LOG_FILE: str | None = Field(default="var/opsg.log", description="Rotating JSON log file")

    def seed(self) -> int:
        """Resolve the generator seed.

        Priority:
        1. Unprefixed OPSG_SEED from the environment
        2. DEFAULT_SEED from the model (with env prefix if applicable)

        Returns:
            Seed as a non-negative integer
        """
        raw = os.getenv("OPSG_SEED")
        if raw:
            try:
                value = int(raw)
            except ValueError:
                logger.warning(f"Ignoring non-integer OPSG_SEED={raw!r}")
            else:
                if value >= 0:
                    logger.info("Found unprefixed OPSG_SEED from environment")
                    return value
                logger.warning(f"Ignoring negative OPSG_SEED={value}")
        return self.DEFAULT_SEED


# ---------------------------------------------------------
# Environment-Specific
# ---------------------------------------------------------
class DevConfig(GlobalConfig):
    """Development environment configuration.

    Uses DEV_ prefix for environment variables and logs case decisions.
    """

    model_config = SettingsConfigDict(env_prefix="DEV_", extra="ignore")
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"


class ProdConfig(GlobalConfig):
    model_config = SettingsConfigDict(env_prefix="PROD_", extra="ignore")


class TestConfig(GlobalConfig):
    """Test environment configuration.

    Uses TEST_ prefix for environment variables. No log file is written.
    """

    model_config = SettingsConfigDict(env_prefix="TEST_", extra="ignore")
    LOG_FILE: str | None = None


# ---------------------------------------------------------
# Factory
# ---------------------------------------------------------
@lru_cache()
def get_settings() -> GlobalConfig:
    """Settings object for the current ENV_STATE, built once per process.

    Returns:
        Configuration instance for the current environment
    """
    base = BaseConfig()

    mapping: dict[str, type[GlobalConfig]] = {
        "dev": DevConfig,
        "prod": ProdConfig,
        "test": TestConfig,
    }

    config_class = mapping.get(base.ENV_STATE, DevConfig)
    return config_class()


settings = get_settings()
