"""Pipeline stages wired from a RunConfig."""

from timespace.engine.demo import DemoResult, run_demo
from timespace.engine.measure import (
    ConstancyReport,
    DetectionSummary,
    constancy_report,
    detect_records,
    ok_points,
    transform_samples,
)
from timespace.engine.run_config import RunConfig
from timespace.engine.simulate import centered_finite_diff, frame_times, render_scene, simulate_tracks

__all__ = [
    "ConstancyReport",
    "DemoResult",
    "DetectionSummary",
    "RunConfig",
    "centered_finite_diff",
    "constancy_report",
    "detect_records",
    "frame_times",
    "ok_points",
    "render_scene",
    "run_demo",
    "simulate_tracks",
    "transform_samples",
]
