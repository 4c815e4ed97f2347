import logging
from typing import Literal

from pydantic import computed_field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing_extensions import Self

U64_LIMIT = 2**64


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="SQZCHAIN_",
        env_file=".env",
        env_ignore_empty=True,
        extra="ignore",
    )

    ENVIRONMENT: Literal["local", "ci", "production"] = "local"

    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    # dict log messages are rendered as JSON when set
    LOG_JSON: bool = True

    # used when --seed is not given on the command line
    DEFAULT_SEED: int = 0

    # standard single-mode fiber near 1550 nm
    DEFAULT_FIBER_DISPERSION_PS_NM_KM: float = 17.0
    DEFAULT_FIBER_REFERENCE_NM: float = 1545.0

    # infinite detection gain is replaced by this finite power gain
    GAIN_CAP: float = 1e12

    @computed_field  # type: ignore[prop-decorator]
    @property
    def log_level_number(self) -> int:
        return logging.getLevelNamesMapping()[self.LOG_LEVEL]

    @model_validator(mode="after")
    def _check_ranges(self) -> Self:
        if not 0 <= self.DEFAULT_SEED < U64_LIMIT:
            raise ValueError("DEFAULT_SEED must fit in an unsigned 64-bit integer")
        if self.GAIN_CAP < 1:
            raise ValueError("GAIN_CAP must be at least 1")
        return self


settings = Settings()
