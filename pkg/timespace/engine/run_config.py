"""Run configuration: defaults, YAML run files and flags merged into one object."""

from dataclasses import asdict, dataclass, fields
from typing import Any

from config.settings import DEFAULTS
from config.validator import coerce_run_config, validate_run_config


@dataclass
class RunConfig:
    """Configuration for one CLI invocation."""
    scene: str | None = None
    frames: int = DEFAULTS["frames"]
    dt: float = DEFAULTS["dt"]
    flow: str = DEFAULTS["flow"]
    noise: float = DEFAULTS["noise"]
    seed: int = DEFAULTS["seed"]
    eps_abs: float = DEFAULTS["eps_abs"]
    eps_rel: float = DEFAULTS["eps_rel"]
    map: str = DEFAULTS["map"]
    vmin: float = DEFAULTS["vmin"]
    vmax: float | None = DEFAULTS["vmax"]
    t: float = DEFAULTS["t"]
    t1: float = DEFAULTS["t1"]
    t2: float = DEFAULTS["t2"]
    focal: float | None = None
    out: str | None = None
    workers: int = DEFAULTS["workers"]

    @classmethod
    def from_dict(cls, values: dict[str, Any]) -> "RunConfig":
        """Build from a plain dict, ignoring None values and normalizing '-' to '_'."""
        known = {f.name for f in fields(cls)}
        kwargs: dict[str, Any] = {}
        for key, value in values.items():
            name = str(key).replace("-", "_")
            if value is None or name not in known:
                continue
            kwargs[name] = value
        return cls(**kwargs)

    @classmethod
    def resolve(cls, flags: dict[str, Any], file_values: dict[str, Any] | None = None) -> "RunConfig":
        """
        Merge DEFAULTS < YAML run file < explicit flags, then validate.

        Raises RunConfigValidationError on any invalid value.
        """
        merged: dict[str, Any] = {}
        merged.update({str(k).replace("-", "_"): v for k, v in (file_values or {}).items()})
        merged.update({k: v for k, v in flags.items() if v is not None})
        config = cls.from_dict(merged)
        coerce_run_config(config)
        validate_run_config(config)
        return config

    def manifest(self) -> dict[str, Any]:
        """Values echoed to manifest.yaml; thread count is left out since it never changes results."""
        values = asdict(self)
        values.pop("workers")
        return values
