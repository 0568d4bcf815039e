from loguru import logger
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from tree_mio.domain.exceptions import ImproperlyConfigured


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # --- Reproducibility ---
    TREEMIO_SEED: int = 0

    # --- Solver defaults ---
    TREEMIO_FEAS_TOL: float = Field(default=1e-7, gt=0)
    TREEMIO_INT_TOL: float = Field(default=1e-6, gt=0)
    TREEMIO_MAX_LP_ITERS: int = Field(default=50_000, gt=0)
    TREEMIO_MAX_BNB_NODES: int = Field(default=200_000, gt=0)

    # --- Benchmark harness ---
    TREEMIO_BENCH_WORKERS: int = Field(default=1, gt=0)

    # --- CLI ---
    TREEMIO_LOG_LEVEL: str = "INFO"

    @classmethod
    def load_settings(cls) -> "Settings":
        """
        Loads the settings from the environment and the '.env' file, falling back to the defaults.

        Returns:
            Settings: The initialized settings object.

        Raises:
            ImproperlyConfigured: If an environment value cannot be parsed.
        """

        try:
            settings = Settings()
        except ValidationError as e:
            logger.error("Invalid TREEMIO_* environment configuration.")

            raise ImproperlyConfigured(str(e)) from e

        return settings


settings = Settings.load_settings()
