"""
Scene Registry - Single source of truth for the built-in scenes.

Each scene entry contains:
- name: Display name
- description: What the scene exercises
- builder: Zero-argument callable returning a Scene
"""

from typing import Callable

from timespace.geometry.presets import (
    mixed_scene,
    near_mixed_scene,
    pole_scene,
    pyramid_scene,
    street_movers_scene,
    street_scene,
    wall_scene,
)
from timespace.geometry.types import Scene

PRESET_PREFIX = "preset:"

SCENE_REGISTRY: dict[str, dict] = {
    "pyramid": {
        "name": "Pyramid",
        "description": "Wireframe pyramid approached head-on; shape constancy in the invariant domain",
        "builder": pyramid_scene,
    },
    "wall": {
        "name": "Wall",
        "description": "Fronto-parallel wall at 20 m; iso-depth gives iso-1/TTC",
        "builder": wall_scene,
    },
    "pole": {
        "name": "Pole",
        "description": "Pole parallel to the path at 4 m; constant 1/Time-Clearance",
        "builder": pole_scene,
    },
    "street": {
        "name": "Street",
        "description": "Stationary corridor for the color-coded map sequence",
        "builder": street_scene,
    },
    "street_movers": {
        "name": "Street with movers",
        "description": "The street plus five crossing boxes",
        "builder": street_movers_scene,
    },
    "mixed": {
        "name": "Mixed cloud",
        "description": "200 stationary and 5 moving points for detection scoring",
        "builder": mixed_scene,
    },
    "near_mixed": {
        "name": "Near mixed cloud",
        "description": "Close 200 + 5 cloud at speed 10, sampled 0.05 s apart for noisy detection",
        "builder": near_mixed_scene,
    },
}


def get_scene_info(scene_id: str) -> dict | None:
    """Get full info for a preset by its ID."""
    return SCENE_REGISTRY.get(scene_id)


def get_all_scenes() -> list[str]:
    """Get list of all preset IDs."""
    return list(SCENE_REGISTRY.keys())


def build_preset(scene_id: str) -> Scene:
    """Build a preset scene, raising KeyError for unknown IDs."""
    info = SCENE_REGISTRY.get(scene_id)
    if info is None:
        raise KeyError(f"unknown preset '{scene_id}' (known: {', '.join(get_all_scenes())})")
    builder: Callable[[], Scene] = info["builder"]
    return builder()
