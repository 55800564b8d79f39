from pydantic_settings import BaseSettings
from typing import List


class Settings(BaseSettings):
    # Project
    project_name: str = "infdef"
    api_v1_str: str = "/api/v1"
    cors_origins: List[str] = ["*"]

    # Computation defaults (picked from .env or INFDEF_* variables)
    default_degree: int = 6

    # Logging
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    # Selftest fixtures run in a thread pool when > 1
    selftest_jobs: int = 1

    class Config:
        env_file = ".env"
        env_prefix = "INFDEF_"
        case_sensitive = False
        extra = "ignore"


settings = Settings()
