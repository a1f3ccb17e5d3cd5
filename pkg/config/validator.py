"""
Validation for run configurations and the scene registry.

Validates:
- Run parameters (frames, dt, flow mode, noise, thresholds, color range)
- Required keys exist for each preset scene
- Preset display names are unique
"""

import math

from config.settings import FLOW_MODES
from timespace.errors import ValidationError

REQUIRED_KEYS = ["name", "description", "builder"]


class RegistryValidationError(ValidationError):
    """Raised when registry validation fails."""
    pass


class RunConfigValidationError(ValidationError):
    """Raised when a run configuration is invalid."""
    pass


def _bulleted(title: str, errors: list[str]) -> str:
    return title + "\n" + "\n".join(f"  - {e}" for e in errors)


INT_FIELDS = ("frames", "seed", "workers")
FLOAT_FIELDS = ("dt", "noise", "eps_abs", "eps_rel", "vmin", "t", "t1", "t2")
OPTIONAL_FLOAT_FIELDS = ("vmax", "focal")
TEXT_FIELDS = ("scene", "flow", "map", "out")


def _as_int(value) -> int:
    if isinstance(value, bool):
        raise ValueError(value)
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(value)
        return int(value)
    return int(str(value).strip())


def _as_float(value) -> float:
    if isinstance(value, bool):
        raise ValueError(value)
    number = float(value)
    if not math.isfinite(number):
        raise ValueError(value)
    return number


def coerce_run_config(config) -> None:
    """
    Convert numeric fields in place, whether they came from flags, YAML
    or the environment.

    Raises RunConfigValidationError listing every field that does not
    convert; integer fields refuse fractional values.
    """
    errors: list[str] = []
    for name in INT_FIELDS + FLOAT_FIELDS + OPTIONAL_FLOAT_FIELDS:
        value = getattr(config, name)
        if value is None and name in OPTIONAL_FLOAT_FIELDS:
            continue
        convert, kind = (_as_int, "an integer") if name in INT_FIELDS else (_as_float, "a finite number")
        try:
            setattr(config, name, convert(value))
        except (TypeError, ValueError, OverflowError):
            errors.append(f"{name} must be {kind}, got {value!r}")
    for name in TEXT_FIELDS:
        value = getattr(config, name)
        if value is not None and not isinstance(value, str):
            errors.append(f"{name} must be text, got {value!r}")

    if errors:
        raise RunConfigValidationError(_bulleted("Run configuration is invalid:", errors))


def validate_run_config(config) -> None:
    """
    Check every run parameter and report all problems at once.

    Raises RunConfigValidationError if any check fails.
    """
    errors: list[str] = []
    if config.frames < 2:
        errors.append(f"frames must be >= 2, got {config.frames}")
    if not config.dt > 0:
        errors.append(f"dt must be > 0, got {config.dt}")
    if config.flow not in FLOW_MODES:
        errors.append(f"flow must be one of {', '.join(FLOW_MODES)}, got '{config.flow}'")
    if config.noise < 0:
        errors.append(f"noise must be >= 0, got {config.noise}")
    if config.eps_abs < 0:
        errors.append(f"eps_abs must be >= 0, got {config.eps_abs}")
    if config.eps_rel < 0:
        errors.append(f"eps_rel must be >= 0, got {config.eps_rel}")
    if config.vmax is not None and not config.vmax > config.vmin:
        errors.append(f"vmax must exceed vmin, got vmin={config.vmin} vmax={config.vmax}")
    if config.workers < 1:
        errors.append(f"workers must be >= 1, got {config.workers}")

    if errors:
        raise RunConfigValidationError(_bulleted("Run configuration is invalid:", errors))


def validate_required_keys(registry: dict[str, dict]) -> list[str]:
    """Check that all presets have required keys."""
    errors = []
    for scene_id, info in registry.items():
        for key in REQUIRED_KEYS:
            if key not in info:
                errors.append(f"Scene '{scene_id}' missing required key: '{key}'")
        if "builder" in info and not callable(info["builder"]):
            errors.append(f"Scene '{scene_id}' builder is not callable")
    return errors


def validate_unique_names(registry: dict[str, dict]) -> list[str]:
    """Check that display names are unique."""
    errors = []
    names_seen: dict[str, str] = {}

    for scene_id, info in registry.items():
        name = info.get("name")
        if name in names_seen:
            errors.append(f"Duplicate name '{name}' for scenes: '{names_seen[name]}' and '{scene_id}'")
        else:
            names_seen[name] = scene_id

    return errors


def validate_scene_registry(registry: dict[str, dict] | None = None) -> None:
    """
    Run all validation checks on the scene registry.

    Raises RegistryValidationError if any validation fails.
    """
    if registry is None:
        from config.scene_registry import SCENE_REGISTRY
        registry = SCENE_REGISTRY

    all_errors: list[str] = []

    all_errors.extend(validate_required_keys(registry))
    all_errors.extend(validate_unique_names(registry))

    if all_errors:
        raise RegistryValidationError(_bulleted("Registry validation failed:", all_errors))


if __name__ == "__main__":
    try:
        validate_scene_registry()
        print("Registry validation passed!")
    except RegistryValidationError as e:
        print(e)
        exit(1)
