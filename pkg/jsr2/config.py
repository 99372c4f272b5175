import os
from contextvars import ContextVar
from typing import TYPE_CHECKING, override

from loguru import logger
from pydantic import PositiveFloat, PositiveInt
from pydantic_settings import (
    BaseSettings,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

from mat2.core import Tolerance

if TYPE_CHECKING:
    from pydantic_settings import PydanticBaseSettingsSource

ENV_PREFIX = "JSR2__"


class Settings(BaseSettings):
    """Engine defaults; command-line flags and family files override them."""

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_nested_delimiter="__",
        toml_file="jsr2.toml",
        frozen=True,
    )

    rtol: PositiveFloat = 1e-9
    atol: PositiveFloat = 1e-12
    pd_tol: PositiveFloat = 1e-8
    depth: PositiveInt = 12
    budget: PositiveInt = 50_000_000
    threads: PositiveInt | None = None

    @classmethod
    @override
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (
            init_settings,
            env_settings,
            TomlConfigSettingsSource(settings_cls),
            dotenv_settings,
        )

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(rtol=self.rtol, atol=self.atol, pd_tol=self.pd_tol)

    @property
    def workers(self) -> int:
        if self.threads is not None:
            return self.threads
        count = os.process_cpu_count() or 1
        logger.trace("threads unset; using {count} workers", count=count)
        return count


settings_var = ContextVar[Settings]("settings")


def settings() -> Settings:
    try:
        return settings_var.get()
    except LookupError:
        settings_var.set(cfg := Settings())
        return cfg
