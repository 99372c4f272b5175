from .config import config
from .families import EXAMPLE7_RHO, EXAMPLE10_RHO, FAMILIES, example, random_family

__all__ = (
    "EXAMPLE7_RHO",
    "EXAMPLE10_RHO",
    "FAMILIES",
    "config",
    "example",
    "random_family",
)
