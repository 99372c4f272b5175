import os
import sys

from loguru import logger

__all__ = ("DEFAULT_FILTER", "parse_levels", "setup")

# Enumeration progress is logged per depth; keep it quiet unless asked for.
DEFAULT_FILTER = {"jsr2.jsr.bounds": "INFO"}


def parse_levels(spec: str, default: str = "WARNING") -> tuple[str, dict[str, str]]:
    """
    Split a level spec such as `info,jsr2.jsr=debug` into the stderr level and
    the per-module levels. A later bare level overrides an earlier one.
    """
    level = default
    modules: dict[str, str] = {}
    for part in (p.strip() for p in spec.split(",")):
        if not part:
            continue
        module, sep, value = part.rpartition("=")
        if sep:
            modules[module] = value.upper()
        else:
            level = value
    return level.upper(), modules


def setup() -> None:
    spec = os.getenv("LOGURU_LEVEL") or os.getenv("LOG_LEVEL") or ""
    level, modules = parse_levels(spec)

    logger.remove()
    logger.add(
        sys.stderr,
        level=level,
        filter=DEFAULT_FILTER | modules,  # pyright: ignore[reportArgumentType]
    )
    if modules:
        logger.info(
            "per-module log levels: {levels}",
            levels=" ".join(f"{m}={lvl}" for m, lvl in modules.items()),
        )
