"""World model and analytic ground truth."""

from timespace.geometry.kinematics import (
    GroundTruthArrays,
    SceneArrays,
    ground_truth,
    ground_truth_arrays,
    relative_state,
    relative_state_arrays,
    scene_arrays,
)
from timespace.geometry.scene_file import expand_box, expand_pyramid, format_scene, load_scene, parse_scene
from timespace.geometry.types import ZERO, CameraRig, GroundTruthGeometry, Scene, ScenePoint, Vec3

__all__ = [
    "ZERO",
    "CameraRig",
    "GroundTruthArrays",
    "GroundTruthGeometry",
    "Scene",
    "SceneArrays",
    "ScenePoint",
    "Vec3",
    "expand_box",
    "expand_pyramid",
    "format_scene",
    "ground_truth",
    "ground_truth_arrays",
    "load_scene",
    "parse_scene",
    "relative_state",
    "relative_state_arrays",
    "scene_arrays",
]
