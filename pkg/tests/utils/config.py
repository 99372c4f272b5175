from typing import TYPE_CHECKING, Any

from jsr2.config import Settings, settings_var

if TYPE_CHECKING:
    from contextvars import Token


def config(**overrides: Any) -> Token[Settings]:
    """
    Intended to be used as a context manager:

        with config(depth=4):
            ...
    """
    Settings.model_config["toml_file"] = None
    Settings.model_config["env_prefix"] = "="  # invalid env var name char
    return settings_var.set(Settings(**overrides))
