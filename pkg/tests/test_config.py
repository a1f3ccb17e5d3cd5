import logging

import pytest

from config.scene_registry import SCENE_REGISTRY, build_preset, get_all_scenes, get_scene_info
from config.settings import DEFAULTS, configure_logging
from config.validator import (
    RegistryValidationError,
    RunConfigValidationError,
    validate_scene_registry,
    validate_unique_names,
)
from timespace.engine.run_config import RunConfig
from timespace.errors import ValidationError
from timespace.geometry import Scene


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig.resolve({})
        assert config.frames == DEFAULTS["frames"]
        assert config.flow == "analytic"
        assert config.vmax is None

    def test_flag_beats_file_beats_default(self):
        config = RunConfig.resolve(
            {"frames": 9, "noise": None},
            {"frames": 6, "noise": 0.01, "eps-abs": 0.05},
        )
        assert config.frames == 9
        assert config.noise == 0.01
        assert config.eps_abs == 0.05
        assert config.dt == DEFAULTS["dt"]

    def test_file_values_are_coerced(self):
        config = RunConfig.resolve({}, {"frames": "5", "dt": 1, "seed": "42"})
        assert (config.frames, config.dt, config.seed) == (5, 1.0, 42)
        assert isinstance(config.dt, float)

    @pytest.mark.parametrize(
        "values, field",
        [
            ({"frames": "abc"}, "frames"),
            ({"frames": 2.7}, "frames"),
            ({"workers": "many"}, "workers"),
            ({"seed": True}, "seed"),
            ({"dt": "fast"}, "dt"),
            ({"t": float("inf")}, "t"),
            ({"vmax": [1]}, "vmax"),
            ({"scene": 5}, "scene"),
        ],
    )
    def test_unconvertible_values(self, values, field):
        with pytest.raises(RunConfigValidationError, match=f"  - {field} must be"):
            RunConfig.resolve({}, values)

    def test_whole_float_frame_count(self):
        assert RunConfig.resolve({}, {"frames": 3.0}).frames == 3

    def test_every_problem_is_reported(self):
        with pytest.raises(RunConfigValidationError) as exc:
            RunConfig.resolve({"frames": 1, "dt": 0.0, "flow": "spline", "noise": -1.0})
        message = str(exc.value)
        for field in ("frames", "dt", "flow", "noise"):
            assert f"  - {field}" in message

    def test_range_order(self):
        with pytest.raises(RunConfigValidationError, match="vmax"):
            RunConfig.resolve({"vmin": 0.5, "vmax": 0.5})

    def test_validation_error_family(self):
        assert issubclass(RunConfigValidationError, ValidationError)
        assert issubclass(RegistryValidationError, ValidationError)

    def test_unknown_keys_are_ignored(self):
        assert RunConfig.from_dict({"colour": "red", "t1": 2.0}).t1 == 2.0

    def test_manifest_omits_workers(self):
        manifest = RunConfig.resolve({"workers": 4, "scene": "preset:wall"}).manifest()
        assert "workers" not in manifest
        assert manifest["scene"] == "preset:wall"


class TestSceneRegistry:
    def test_registry_is_valid(self):
        validate_scene_registry()

    def test_lookup(self):
        assert "pyramid" in get_all_scenes()
        assert get_scene_info("wall")["name"] == "Wall"
        assert get_scene_info("nope") is None

    @pytest.mark.parametrize("name", sorted(SCENE_REGISTRY))
    def test_every_preset_builds(self, name):
        assert isinstance(build_preset(name), Scene)

    def test_unknown_preset(self):
        with pytest.raises(KeyError):
            build_preset("moon")

    def test_duplicate_names_detected(self):
        registry = {
            "a": {"name": "Same", "description": "", "builder": lambda: None},
            "b": {"name": "Same", "description": "", "builder": lambda: None},
        }
        assert len(validate_unique_names(registry)) == 1
        with pytest.raises(RegistryValidationError):
            validate_scene_registry(registry)

    def test_missing_keys_detected(self):
        with pytest.raises(RegistryValidationError, match="builder"):
            validate_scene_registry({"a": {"name": "A", "description": ""}})


class TestLogging:
    def test_configure_twice_keeps_one_handler(self):
        configure_logging("DEBUG")
        configure_logging("INFO")
        root = logging.getLogger("timespace")
        marked = [h for h in root.handlers if getattr(h, "_timespace", False)]
        assert len(marked) == 1
        assert root.level == logging.INFO


class TestEnvironment:
    def test_malformed_worker_count(self, monkeypatch):
        import importlib

        import config.settings as settings

        monkeypatch.setenv("TIMESPACE_WORKERS", "many")
        try:
            reloaded = importlib.reload(settings)
            assert reloaded.WORKERS == "many"
            with pytest.raises(RunConfigValidationError, match="workers must be an integer"):
                RunConfig.resolve({"workers": reloaded.DEFAULTS["workers"]})
        finally:
            monkeypatch.delenv("TIMESPACE_WORKERS", raising=False)
            importlib.reload(settings)

    def test_modes_follow_environment(self, monkeypatch):
        import config.settings as settings

        monkeypatch.setattr(settings, "ENVIRONMENT", "dev")
        assert settings.is_dev_mode()
        assert not settings.is_prod_mode()
        monkeypatch.setattr(settings, "ENVIRONMENT", "prod")
        assert settings.is_prod_mode()
