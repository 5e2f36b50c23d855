# mellinkit/core - Core infrastructure components
"""
Core modules for mellinkit.

Includes configuration, logging and the error hierarchy.
"""

from mellinkit.core.config import MellinKitConfig, load_config
from mellinkit.core.errors import MellinKitError
from mellinkit.core.logger import configure_logger

__all__ = [
    "load_config",
    "MellinKitConfig",
    "MellinKitError",
    "configure_logger",
]
