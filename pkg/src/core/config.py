"""Application configuration using Pydantic Settings."""
from typing import Literal
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application Settings
    app_name: str = Field(default="KnownOpt", description="Application name")
    app_version: str = Field(default="0.1.0", description="Application version")

    # Experiment Output
    output_dir: str = Field(default="knownopt_output", description="Default experiment output directory")
    max_workers: int = Field(default=4, ge=1, description="Max concurrent runs")

    # Surrogate Defaults
    gp_jitter: float = Field(default=1e-6, gt=0, description="Initial diagonal jitter for the Gram matrix")
    jitter_ceiling: float = Field(default=1e-2, gt=0, description="Largest jitter tried before a fit fails")
    lengthscale_min: float = Field(default=0.01, gt=0, description="Smallest lengthscale in the selection grid")
    lengthscale_max: float = Field(default=10.0, gt=0, description="Largest lengthscale in the selection grid")
    lengthscale_grid_size: int = Field(default=25, ge=1, description="Number of log-spaced grid entries")

    # Acquisition Defaults
    acq_samples_per_dim: int = Field(default=200, ge=1, description="Random candidates per input dimension")
    acq_refine_starts: int = Field(default=5, ge=1, description="Best candidates refined by pattern search")
    beta_delta: float = Field(default=0.1, gt=0, lt=1, description="Confidence parameter of the beta schedule")

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO",
        description="Logging level"
    )
    log_format: Literal["json", "text"] = Field(default="text", description="Log format")
    log_file: str = Field(default="logs/knownopt.log", description="Log file path")

    @property
    def lengthscale_grid(self) -> list[float]:
        """Log-spaced lengthscale grid built from the grid settings."""
        from src.surrogates.gp import default_lengthscale_grid

        return default_lengthscale_grid(
            self.lengthscale_min, self.lengthscale_max, self.lengthscale_grid_size
        )


# Global settings instance
settings = Settings()
