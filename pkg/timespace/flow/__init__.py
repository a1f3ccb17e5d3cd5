"""Projection and radial-flow synthesis."""

from timespace.flow.noise import add_flow_noise, add_flow_noise_arrays
from timespace.flow.projection import (
    FlowArrays,
    FlowQuality,
    FlowSample,
    ImagePoint,
    analytic_flow,
    analytic_flow_arrays,
    finite_diff_flow,
    in_frame,
    pixel_index,
    project,
    project_arrays,
)

__all__ = [
    "FlowArrays",
    "FlowQuality",
    "FlowSample",
    "ImagePoint",
    "add_flow_noise",
    "add_flow_noise_arrays",
    "analytic_flow",
    "analytic_flow_arrays",
    "finite_diff_flow",
    "in_frame",
    "pixel_index",
    "project",
    "project_arrays",
]
