"""
Pinhole projection and synthesis of measurable radial flow (rho, theta, rho_dot).

Image coordinates (u, v) are in pixels relative to the principal point,
which is also the FOE; +v points up. Pixel (col, row) of a sample is
(floor(u + width/2), floor(height/2 - v)).
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from timespace.errors import BehindCamera, MismatchedTrack, ValidationError
from timespace.geometry.kinematics import (
    SceneArrays,
    ground_truth,
    ground_truth_arrays,
    relative_state,
    relative_state_arrays,
)
from timespace.geometry.types import CameraRig, ScenePoint


class FlowQuality(str, Enum):
    ANALYTIC = "analytic"
    FINITE_DIFF = "finite_diff"
    NOISY = "noisy"


@dataclass(frozen=True)
class ImagePoint:
    """Projection of a scene point at time t."""
    u: float
    v: float
    t: float
    point_id: int
    in_frame: bool = True

    @property
    def rho(self) -> float:
        return math.hypot(self.u, self.v)

    @property
    def theta(self) -> float:
        return math.atan2(self.v, self.u)


@dataclass(frozen=True)
class FlowSample:
    """One radial-flow observation of a tracked point."""
    rho: float
    theta: float
    rho_dot: float
    t: float
    point_id: int
    quality: FlowQuality = FlowQuality.ANALYTIC
    u: float = 0.0
    v: float = 0.0

    @property
    def on_axis(self) -> bool:
        return self.rho == 0.0


def pixel_index(u, v, width: int, height: int):
    """Nearest pixel (col, row) of image coordinates; works on scalars and arrays."""
    col = np.floor(np.asarray(u) + width / 2.0).astype(np.int64)
    row = np.floor(height / 2.0 - np.asarray(v)).astype(np.int64)
    return col, row


def in_frame(u, v, width: int, height: int):
    """True where (u, v) falls on the raster; NaN coordinates are never in frame."""
    col = np.floor(np.asarray(u, dtype=np.float64) + width / 2.0)
    row = np.floor(height / 2.0 - np.asarray(v, dtype=np.float64))
    return (col >= 0) & (col < width) & (row >= 0) & (row < height)


def project(p: ScenePoint, rig: CameraRig, t: float) -> ImagePoint:
    """
    Pinhole projection of a scene point at time t.

    Raises:
        BehindCamera: if the point is not strictly ahead of the camera
    """
    pos, _ = relative_state(p, rig, t)
    if not pos.z > 0:
        raise BehindCamera(f"point {p.id} has depth {pos.z} at t={t}")
    u = rig.focal * pos.x / pos.z
    v = rig.focal * pos.y / pos.z
    return ImagePoint(u=u, v=v, t=t, point_id=p.id, in_frame=bool(in_frame(u, v, rig.width, rig.height)))


def analytic_flow(p: ScenePoint, rig: CameraRig, t: float) -> FlowSample:
    """
    Exact radial flow from the ground-truth oracle.

    rho = focal * tan(alpha) and rho_dot = alpha_dot * (focal^2 + rho^2) / focal.
    On-axis points yield rho = rho_dot = 0 (FlowSample.on_axis is set).
    """
    gt = ground_truth(p, rig, t)
    image = project(p, rig, t)
    f = rig.focal
    rho = f * math.tan(gt.alpha)
    rho_dot = gt.alpha_dot * (f * f + rho * rho) / f
    return FlowSample(
        rho=rho,
        theta=gt.theta,
        rho_dot=rho_dot,
        t=t,
        point_id=p.id,
        quality=FlowQuality.ANALYTIC,
        u=image.u,
        v=image.v,
    )


def finite_diff_flow(a: ImagePoint, b: ImagePoint) -> FlowSample:
    """
    Central-difference flow between two projections of the same point.

    The sample is stamped at the interval midpoint, which makes both rho
    and rho_dot second-order accurate.

    Raises:
        MismatchedTrack: if the two projections belong to different points
    """
    if a.point_id != b.point_id:
        raise MismatchedTrack(f"cannot difference point {a.point_id} against point {b.point_id}")
    dt = b.t - a.t
    if not dt > 0:
        raise ValidationError(f"finite difference needs dt > 0, got {dt}")

    rho_a, rho_b = a.rho, b.rho
    return FlowSample(
        rho=(rho_a + rho_b) / 2.0,
        theta=a.theta,
        rho_dot=(rho_b - rho_a) / dt,
        t=a.t + dt / 2.0,
        point_id=a.point_id,
        quality=FlowQuality.FINITE_DIFF,
        u=(a.u + b.u) / 2.0,
        v=(a.v + b.v) / 2.0,
    )


class FlowArrays(NamedTuple):
    ids: np.ndarray
    u: np.ndarray
    v: np.ndarray
    rho: np.ndarray
    theta: np.ndarray
    rho_dot: np.ndarray
    s: np.ndarray
    in_front: np.ndarray
    in_frame: np.ndarray
    on_axis: np.ndarray


def project_arrays(arrays: SceneArrays, rig: CameraRig, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized projection; returns (u, v, s) with NaN image coordinates behind the camera."""
    pos, _ = relative_state_arrays(arrays, rig.speed, t)
    s = pos[:, 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        u = np.where(s > 0, rig.focal * pos[:, 0] / s, np.nan)
        v = np.where(s > 0, rig.focal * pos[:, 1] / s, np.nan)
    return u, v, s


def analytic_flow_arrays(arrays: SceneArrays, rig: CameraRig, t: float) -> FlowArrays:
    """Vectorized analytic_flow over a packed scene."""
    gt = ground_truth_arrays(arrays, rig, t)
    u, v, s = project_arrays(arrays, rig, t)
    f = rig.focal
    rho = f * np.tan(gt.alpha)
    rho_dot = gt.alpha_dot * (f * f + rho * rho) / f
    visible = gt.in_front & in_frame(u, v, rig.width, rig.height)
    return FlowArrays(
        ids=arrays.ids,
        u=u,
        v=v,
        rho=rho,
        theta=gt.theta,
        rho_dot=rho_dot,
        s=s,
        in_front=gt.in_front,
        in_frame=visible,
        on_axis=gt.on_axis,
    )
