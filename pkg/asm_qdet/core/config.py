from enum import StrEnum

from pydantic_settings import BaseSettings


class Environment(StrEnum):
    TESTING = "TESTING"
    DEVELOPMENT = "DEVELOPMENT"
    STAGING = "STAGING"
    PRODUCTION = "PRODUCTION"

    @property
    def is_development(self) -> bool:
        return self == Environment.DEVELOPMENT

    @property
    def is_production(self) -> bool:
        return self == Environment.PRODUCTION


class Settings(BaseSettings):
    ENVIRONMENT: Environment = Environment.DEVELOPMENT
    LOG_LEVEL: str = "INFO"
    ENABLED_LOGGERS: list[str] = []

    MAX_SYMBOLIC_N: int = 8  # cli guard for symbolic d_{n,k}
    DET_HARD_MAX_N: int = 12  # never computed beyond this, whatever the overrides
    MAX_ORACLE_N: int = 7  # A_7 = 218348 triangles
    COFACTOR_MAX_N: int = 6
    CROSS_CHECK_ENGINES: bool = True
    CACHE_DIR: str | None = None
    REPORT_SCHEMA_VERSION: int = 1
    RANDOM_SEED: int = 20180611


settings = Settings()
