"""Configuration module for the timespace simulator."""

from config.scene_registry import PRESET_PREFIX, SCENE_REGISTRY, build_preset, get_all_scenes, get_scene_info
from config.settings import DEFAULTS, ENVIRONMENT, configure_logging, is_dev_mode, is_prod_mode

__all__ = [
    "DEFAULTS",
    "ENVIRONMENT",
    "PRESET_PREFIX",
    "SCENE_REGISTRY",
    "build_preset",
    "configure_logging",
    "get_all_scenes",
    "get_scene_info",
    "is_dev_mode",
    "is_prod_mode",
]
