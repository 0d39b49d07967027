"""
Shared configuration settings for all services.
"""
from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application
    APP_NAME: str = "Causal Entropy Toolkit"
    APP_ENV: str = "development"
    DEBUG: bool = False
    SERVICE_NAME: str = "entropic"

    # Execution
    MAX_WORKERS: int = 1
    SAMPLE_SEED: int = 0

    # Numerics
    ENTROPY_TOLERANCE: float = 1e-9

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "json"

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        if isinstance(v, str):
            return v.strip().upper()
        return v

    @field_validator("LOG_FORMAT", mode="before")
    @classmethod
    def normalize_log_format(cls, v):
        if isinstance(v, str):
            v = v.strip().lower()
            if v not in ("json", "console"):
                raise ValueError("LOG_FORMAT must be 'json' or 'console'")
        return v

    @field_validator("MAX_WORKERS")
    @classmethod
    def check_workers(cls, v):
        if v < 1:
            raise ValueError("MAX_WORKERS must be at least 1")
        return v

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
