"""Constancy residuals and moving-point detection."""

from timespace.detect.constancy import (
    DEFAULT_EPS_ABS,
    DEFAULT_EPS_REL,
    DetectionLabel,
    DetectionScore,
    TrackSeries,
    classify,
    classify_tracks,
    constancy_offenders,
    group_tracks,
    score_detection,
    shape_constancy,
    tc_residual,
    ttc_drift_residual,
    ttc_slope,
)

__all__ = [
    "DEFAULT_EPS_ABS",
    "DEFAULT_EPS_REL",
    "DetectionLabel",
    "DetectionScore",
    "TrackSeries",
    "classify",
    "classify_tracks",
    "constancy_offenders",
    "group_tracks",
    "score_detection",
    "shape_constancy",
    "tc_residual",
    "ttc_drift_residual",
    "ttc_slope",
]
