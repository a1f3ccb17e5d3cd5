"""End-to-end properties of the invariant pipeline."""

import inspect
import itertools
import math

import numpy as np
import pytest

from _helpers import point
from timespace.detect import group_tracks, score_detection, shape_constancy, tc_residual, ttc_slope
from timespace.engine import (
    RunConfig,
    centered_finite_diff,
    detect_records,
    ok_points,
    run_demo,
    simulate_tracks,
    transform_samples,
)
from timespace.engine import measure
from timespace.flow import analytic_flow
from timespace.geometry import CameraRig
from timespace.geometry.presets import (
    NEAR_DT,
    NEAR_FRAMES,
    mixed_scene,
    near_mixed_scene,
    pole_scene,
    pyramid_scene,
    wall_scene,
)
from timespace.raster import splat_map

FOCAL = 256.0


def _stationary_cloud(rng, n, d_range, s_range):
    d = rng.uniform(*d_range, n)
    s = rng.uniform(*s_range, n)
    theta = rng.uniform(-math.pi, math.pi, n)
    return d, s, theta


class TestOracleEquivalence:
    def test_random_stationary_points(self):
        rng = np.random.default_rng(1000)
        d, s, theta = _stationary_cloud(rng, 1000, (0.1, 50.0), (0.5, 100.0))
        speeds = rng.uniform(0.1, 10.0, 1000)
        samples = []
        for i in range(1000):
            rig = CameraRig(float(speeds[i]), FOCAL, 512, 512)
            p = point(i, d[i] * math.cos(theta[i]), d[i] * math.sin(theta[i]), s[i])
            samples.append(analytic_flow(p, rig, 0.0))

        records = transform_samples(samples, FOCAL)
        tc = np.array([rec.tc for rec in records])
        ttc = np.array([rec.ttc for rec in records])
        np.testing.assert_allclose(tc, d / speeds, rtol=1e-12)
        np.testing.assert_allclose(ttc, s / speeds, rtol=1e-12)

    def test_measurement_side_never_sees_speed(self):
        for fn in (measure.transform_samples, measure.detect_records, measure.constancy_report):
            params = set(inspect.signature(fn).parameters)
            assert not params & {"speed", "rig", "scene"}
        assert "speed" not in inspect.getsource(measure)


class TestShapeConstancy:
    TIMES = (0.0, 1.0, 2.0, 3.0)

    def _frames(self, samples):
        points = ok_points(transform_samples(samples, FOCAL))
        return {t: [ip for ip in points if abs(ip.t - t) < 1e-9] for t in self.TIMES}

    def test_analytic_flow(self):
        scene = pyramid_scene()
        frames = self._frames(simulate_tracks(scene, 4, 1.0))
        assert all(len(frame) == len(scene) for frame in frames.values())
        for t1, t2 in itertools.combinations(self.TIMES, 2):
            assert shape_constancy(frames[t1], frames[t2]) <= 1e-9

    def test_finite_difference_flow(self):
        scene = pyramid_scene()
        dt = 1e-2
        frames = self._frames(centered_finite_diff(scene, self.TIMES, dt))
        assert all(len(frame) == len(scene) for frame in frames.values())
        for t1, t2 in itertools.combinations(self.TIMES, 2):
            assert shape_constancy(frames[t1], frames[t2]) <= 5e-3


class TestFiniteDifferenceConvergence:
    def test_clearance_error_is_second_order(self):
        scene = pyramid_scene()
        oracle = {p.id: math.hypot(p.position0.x, p.position0.y) / scene.rig.speed for p in scene.points}
        errors = []
        for dt in (1e-2, 5e-3, 2.5e-3):
            points = ok_points(transform_samples(centered_finite_diff(scene, (0.0, 1.0, 2.0, 3.0), dt), FOCAL))
            assert len(points) == 4 * len(scene)
            errors.append(max(abs(ip.tc - oracle[ip.point_id]) for ip in points))
        for coarse, fine in zip(errors, errors[1:]):
            assert 3.0 <= coarse / fine <= 5.0


class TestTrackConstancy:
    def test_clearance_and_ttc_decay(self):
        scene = pyramid_scene()
        samples = simulate_tracks(scene, 10, 0.5)
        tracks = group_tracks(ok_points(transform_samples(samples, FOCAL)))
        assert len(tracks) == len(scene)
        for ts in tracks.values():
            assert len(ts) == 10
            assert tc_residual(ts) <= 1e-12
            assert ttc_slope(ts) == pytest.approx(-1.0, abs=1e-9)


class TestDetection:
    def _score(self, scene, samples, eps_abs=0.01, eps_rel=0.02, workers=1):
        labels, _ = detect_records(transform_samples(samples, FOCAL), eps_abs, eps_rel, workers)
        return score_detection(labels, {p.id: not p.stationary for p in scene.points})

    def test_noise_free(self):
        scene = mixed_scene()
        score = self._score(scene, simulate_tracks(scene, 4, 1.0))
        assert (score.precision, score.recall) == (1.0, 1.0)
        assert score.tp == 5

    def test_noise_free_threaded(self):
        scene = mixed_scene()
        samples = simulate_tracks(scene, 4, 1.0, workers=4)
        assert self._score(scene, samples, workers=4) == self._score(scene, simulate_tracks(scene, 4, 1.0))

    @pytest.mark.parametrize("seed", [0, 1, 42])
    def test_relative_flow_noise(self, seed):
        scene = near_mixed_scene()
        samples = simulate_tracks(scene, NEAR_FRAMES, NEAR_DT, noise=0.005, seed=seed)
        assert len(samples) == NEAR_FRAMES * len(scene)
        score = self._score(scene, samples)
        assert (score.precision, score.recall) == (1.0, 1.0)
        assert score.tp == 5

    def test_near_cloud_noise_free(self):
        scene = near_mixed_scene()
        score = self._score(scene, simulate_tracks(scene, NEAR_FRAMES, NEAR_DT))
        assert (score.precision, score.recall) == (1.0, 1.0)


class TestRasterMaps:
    def test_wall_has_uniform_inverse_ttc(self):
        scene = wall_scene()
        grid = splat_map(scene, scene.rig, 0.0, "ttc_inv")
        valid = grid.valid_values()
        assert valid.size > 1000
        np.testing.assert_allclose(valid, 0.1, atol=1e-9)
        assert np.isfinite(valid).all()
        assert not grid.mask[256, 256]

    def test_pole_has_uniform_inverse_clearance(self):
        scene = pole_scene()
        grid = splat_map(scene, scene.rig, 0.0, "tc_inv")
        valid = grid.valid_values()
        assert valid.size > 10
        np.testing.assert_allclose(valid, 0.5, atol=1e-9)
        assert grid.mask.any(axis=1).nonzero()[0].tolist() == [256]


class TestDeterminism:
    def _snapshot(self, root):
        return {
            path.relative_to(root).as_posix(): path.read_bytes()
            for path in sorted(root.rglob("*"))
            if path.is_file()
        }

    def test_demo_is_byte_identical_across_thread_counts(self, tmp_path):
        first = run_demo(tmp_path / "one", RunConfig.resolve({"seed": 3, "workers": 1}))
        second = run_demo(tmp_path / "four", RunConfig.resolve({"seed": 3, "workers": 4}))
        a = self._snapshot(first.out_dir)
        b = self._snapshot(second.out_dir)
        assert a.keys() == b.keys()
        assert any(name.endswith(".ppm") for name in a)
        assert any(name.endswith(".csv") for name in a)
        for name in a:
            assert a[name] == b[name], name
        assert first.shape_constancy <= 1e-9
        assert first.shape_constancy_fd <= 5e-3
        assert all(f"pyramid/frame_{k:03d}.ppm" in a for k in range(4))
        assert "maps/street/frame_000.ppm" in a
        assert (first.detection.precision, first.detection.recall) == (1.0, 1.0)
