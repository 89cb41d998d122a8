import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field, PositiveFloat, PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    """
    Runtime knobs for the counting and verification routines.
    Every field can be overridden with a WITTEN_COUNT_* environment variable.
    """
    model_config = SettingsConfigDict(env_prefix="WITTEN_COUNT_", env_file=".env", extra="ignore")

    threads: PositiveInt = Field(default_factory=lambda: os.cpu_count() or 1)
    brute_point_cap: PositiveInt = 10_000_000
    max_x: PositiveInt = 10**15
    quad_tol: PositiveFloat = 1e-12
    quad_max_subdivisions: PositiveInt = 10**6
    points_per_decade: PositiveInt = 25
    extended_precision_above: PositiveInt = 10**12
    extended_dps: PositiveInt = 40
    log_level: str = "WARNING"


@lru_cache
def get_settings() -> Settings:
    """
    Cached settings accessor.
    Call get_settings.cache_clear() after changing the environment.
    """
    return Settings()
