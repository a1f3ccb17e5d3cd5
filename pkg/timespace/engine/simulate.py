"""
Simulation-side stages: these see the full scene and camera rig.

Track synthesis and raster rendering live here; the measurement stages
in timespace.engine.measure never import this module.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from timespace.errors import ValidationError
from timespace.flow.noise import add_flow_noise_arrays
from timespace.flow.projection import (
    FlowQuality,
    FlowSample,
    ImagePoint,
    analytic_flow_arrays,
    finite_diff_flow,
    in_frame,
    project_arrays,
)
from timespace.geometry.kinematics import SceneArrays, scene_arrays
from timespace.geometry.types import CameraRig, Scene
from timespace.raster.colormap import RgbImage
from timespace.raster.render import ValueRange, render_frame

logger = logging.getLogger(__name__)


def frame_times(frames: int, dt: float) -> list[float]:
    return [k * dt for k in range(frames)]


def _analytic_frame(arrays: SceneArrays, rig: CameraRig, t: float) -> list[FlowSample]:
    flow = analytic_flow_arrays(arrays, rig, t)
    samples = []
    for i in np.argsort(arrays.ids, kind="stable"):
        if not flow.in_frame[i]:
            continue
        samples.append(FlowSample(
            rho=float(flow.rho[i]),
            theta=float(flow.theta[i]),
            rho_dot=float(flow.rho_dot[i]),
            t=t,
            point_id=int(arrays.ids[i]),
            quality=FlowQuality.ANALYTIC,
            u=float(flow.u[i]),
            v=float(flow.v[i]),
        ))
    return samples


def _image_points(arrays: SceneArrays, rig: CameraRig, t: float) -> dict[int, ImagePoint]:
    u, v, s = project_arrays(arrays, rig, t)
    visible = (s > 0) & in_frame(u, v, rig.width, rig.height)
    return {
        int(pid): ImagePoint(float(u[i]), float(v[i]), t, int(pid))
        for i, pid in enumerate(arrays.ids)
        if visible[i]
    }


def _finite_diff_interval(arrays: SceneArrays, rig: CameraRig, t0: float, t1: float) -> list[FlowSample]:
    a = _image_points(arrays, rig, t0)
    b = _image_points(arrays, rig, t1)
    return [finite_diff_flow(a[pid], b[pid]) for pid in sorted(a.keys() & b.keys())]


def simulate_tracks(
    scene: Scene,
    frames: int,
    dt: float,
    flow: str = "analytic",
    noise: float = 0.0,
    seed: int = 0,
    workers: int = 1,
) -> list[FlowSample]:
    """
    Synthesize flow samples for every visible point at t = k * dt.

    Analytic mode yields `frames` samples per point; finite-diff mode
    differences consecutive frames and yields `frames - 1` midpoint
    samples. Noise, when requested, is applied last and keyed per sample.
    """
    arrays = scene_arrays(scene)
    times = frame_times(frames, dt)

    if flow == "analytic":
        jobs = [(_analytic_frame, (arrays, scene.rig, t)) for t in times]
    else:
        jobs = [(_finite_diff_interval, (arrays, scene.rig, t0, t1)) for t0, t1 in zip(times, times[1:])]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_frame = list(pool.map(lambda job: job[0](*job[1]), jobs))
    else:
        per_frame = [fn(*args) for fn, args in jobs]

    samples = [fs for frame in per_frame for fs in frame]
    for k, frame in enumerate(per_frame):
        logger.debug("frame %d: %d visible samples", k, len(frame))

    if noise > 0 and samples:
        noisy = add_flow_noise_arrays(
            np.array([fs.rho_dot for fs in samples]),
            np.array([fs.point_id for fs in samples]),
            np.array([fs.t for fs in samples]),
            noise,
            seed,
        )
        samples = [
            FlowSample(fs.rho, fs.theta, float(rd), fs.t, fs.point_id, FlowQuality.NOISY, fs.u, fs.v)
            for fs, rd in zip(samples, noisy)
        ]

    if not samples:
        logger.warning("no visible points in %d frame(s)", frames)
    return samples


def centered_finite_diff(scene: Scene, times: Sequence[float], h: float, workers: int = 1) -> list[FlowSample]:
    """
    Finite-difference samples centered on each of `times`, differencing
    projections at t - h/2 and t + h/2.
    """
    if not h > 0:
        raise ValidationError(f"finite-difference step must be > 0, got {h}")
    arrays = scene_arrays(scene)
    jobs = [(arrays, scene.rig, t - h / 2.0, t + h / 2.0) for t in times]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_time = list(pool.map(lambda args: _finite_diff_interval(*args), jobs))
    else:
        per_time = [_finite_diff_interval(*args) for args in jobs]
    return [fs for frame in per_time for fs in frame]


def render_scene(
    scene: Scene,
    t: float,
    kind: str,
    vmin: float = 0.0,
    vmax: float | None = None,
    workers: int = 1,
) -> RgbImage:
    """Color-coded invariant map of the scene at time t."""
    return render_frame(scene, scene.rig, t, kind, ValueRange(vmin, vmax), workers)
