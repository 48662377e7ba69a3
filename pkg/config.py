from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    CALIBRATION_WORKERS: int = 1
    LOG_LEVEL: str = "INFO"

    ORACLE_DRAWS: int = 10_000_000
    ORACLE_SEED: int = 20240601

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )


settings = Settings()
