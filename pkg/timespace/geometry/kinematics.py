"""
Camera-frame kinematics and the analytic ground-truth oracle.

Scalar functions mirror the per-point operations; the *_arrays twins
evaluate whole scenes with numpy and flag degenerate points instead of
raising.
"""

import math
from typing import NamedTuple, Sequence

import numpy as np

from timespace.errors import BehindCamera
from timespace.geometry.types import CameraRig, GroundTruthGeometry, Scene, ScenePoint, Vec3


def relative_state(p: ScenePoint, rig: CameraRig, t: float) -> tuple[Vec3, Vec3]:
    """Position and velocity of a point in the camera frame at time t."""
    pos = Vec3(
        p.position0.x + p.velocity.x * t,
        p.position0.y + p.velocity.y * t,
        p.position0.z + p.velocity.z * t - rig.speed * t,
    )
    vel = Vec3(p.velocity.x, p.velocity.y, p.velocity.z - rig.speed)
    return pos, vel


def ground_truth(p: ScenePoint, rig: CameraRig, t: float) -> GroundTruthGeometry:
    """
    Exact (d, s, r, alpha, alpha_dot, theta) of a point at time t.

    Raises:
        BehindCamera: if the point is not strictly ahead of the camera
    """
    pos, vel = relative_state(p, rig, t)
    x, y, s = pos.x, pos.y, pos.z
    if not s > 0:
        raise BehindCamera(f"point {p.id} has depth {s} at t={t}")

    d2 = x * x + y * y
    r2 = d2 + s * s
    d = math.sqrt(d2)
    r = math.sqrt(r2)
    if d == 0.0:
        return GroundTruthGeometry(d=0.0, s=s, r=r, alpha=0.0, alpha_dot=0.0, theta=0.0, on_axis=True)

    d_dot = (x * vel.x + y * vel.y) / d
    alpha_dot = (d_dot * s - d * vel.z) / r2
    return GroundTruthGeometry(
        d=d,
        s=s,
        r=r,
        alpha=math.atan2(d, s),
        alpha_dot=alpha_dot,
        theta=math.atan2(y, x),
    )


class SceneArrays(NamedTuple):
    ids: np.ndarray
    positions0: np.ndarray
    velocities: np.ndarray


class GroundTruthArrays(NamedTuple):
    d: np.ndarray
    s: np.ndarray
    r: np.ndarray
    alpha: np.ndarray
    alpha_dot: np.ndarray
    theta: np.ndarray
    on_axis: np.ndarray
    in_front: np.ndarray


def scene_arrays(points: Scene | Sequence[ScenePoint]) -> SceneArrays:
    """Pack scene points into (N,) id and (N, 3) position/velocity arrays."""
    points = points.points if isinstance(points, Scene) else tuple(points)
    ids = np.array([p.id for p in points], dtype=np.int64)
    positions0 = np.array([p.position0.as_tuple() for p in points], dtype=np.float64).reshape(-1, 3)
    velocities = np.array([p.velocity.as_tuple() for p in points], dtype=np.float64).reshape(-1, 3)
    return SceneArrays(ids, positions0, velocities)


def relative_state_arrays(arrays: SceneArrays, speed: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized relative_state over a packed scene."""
    camera_velocity = np.array([0.0, 0.0, speed])
    pos = arrays.positions0 + arrays.velocities * t
    pos[:, 2] -= speed * t
    vel = arrays.velocities - camera_velocity
    return pos, vel


def ground_truth_arrays(arrays: SceneArrays, rig: CameraRig, t: float) -> GroundTruthArrays:
    """
    Vectorized ground_truth.

    Points behind the camera get in_front=False and NaN geometry;
    on-axis points get alpha=alpha_dot=theta=0 and on_axis=True.
    """
    pos, vel = relative_state_arrays(arrays, rig.speed, t)
    x, y, s = pos[:, 0], pos[:, 1], pos[:, 2]
    in_front = s > 0

    d2 = x * x + y * y
    r2 = d2 + s * s
    d = np.sqrt(d2)
    r = np.sqrt(r2)
    on_axis = in_front & (d == 0.0)
    regular = in_front & ~on_axis

    alpha = np.zeros_like(d)
    alpha_dot = np.zeros_like(d)
    theta = np.zeros_like(d)

    with np.errstate(divide="ignore", invalid="ignore"):
        d_dot = (x * vel[:, 0] + y * vel[:, 1]) / d
        alpha_dot[regular] = ((d_dot * s - d * vel[:, 2]) / r2)[regular]
    alpha[regular] = np.arctan2(d, s)[regular]
    theta[regular] = np.arctan2(y, x)[regular]

    behind = ~in_front
    for arr in (d, s, r, alpha, alpha_dot, theta):
        arr[behind] = np.nan
    return GroundTruthArrays(d, s.copy(), r, alpha, alpha_dot, theta, on_axis, in_front)
