"""YAML run manifests and the intrinsics sidecar written next to tracks CSVs."""

from pathlib import Path
from typing import Any

import yaml

from timespace.errors import ValidationError

INTRINSIC_KEYS = ("focal", "width", "height")


def write_manifest(values: dict[str, Any], path: str | Path) -> Path:
    """Echo a run configuration to YAML with sorted keys."""
    path = Path(path)
    path.write_text(yaml.safe_dump(values, sort_keys=True, default_flow_style=False), encoding="utf-8")
    return path


def read_yaml(path: str | Path) -> dict[str, Any]:
    """
    Load a YAML mapping.

    Raises ValidationError for undecodable or unparsable content; a
    missing file stays an OSError.
    """
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except UnicodeDecodeError:
        raise ValidationError(f"{path}: not valid UTF-8") from None
    except yaml.YAMLError as e:
        raise ValidationError(f"{path}: invalid YAML: {e}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a mapping at top level")
    return data


def sidecar_path(tracks_path: str | Path) -> Path:
    return Path(f"{tracks_path}.meta.yaml")


def write_intrinsics(tracks_path: str | Path, focal: float, width: int, height: int) -> Path:
    """Record camera intrinsics for a tracks file; the speed is deliberately absent."""
    return write_manifest(
        {"focal": float(focal), "width": int(width), "height": int(height)},
        sidecar_path(tracks_path),
    )


def read_focal(tracks_path: str | Path) -> float:
    """Focal length from a tracks file's sidecar."""
    path = sidecar_path(tracks_path)
    if not path.exists():
        raise ValidationError(f"no --focal given and no intrinsics sidecar at {path}")
    data = read_yaml(path)
    try:
        focal = float(data["focal"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError(f"{path}: missing or invalid 'focal'") from None
    if not focal > 0:
        raise ValidationError(f"{path}: focal must be > 0, got {focal}")
    return focal
