"""
Measurement-side stages: they work from CSV records alone.

Nothing here receives a scene or camera rig. The focal length is the
only camera parameter these stages use.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from timespace.detect.constancy import (
    TrackSeries,
    classify_tracks,
    constancy_offenders,
    group_tracks,
    shape_constancy,
    ttc_slope,
)
from timespace.errors import ValidationError
from timespace.flow.projection import FlowSample
from timespace.invariants.core import EPS_MIN, InvariantPoint, InvariantStatus, try_invariant_domain
from timespace.io.tables import LABEL_TOO_SHORT, InvariantRecord, LabelRecord

logger = logging.getLogger(__name__)

FRAME_TOLERANCE = 1e-9


def transform_samples(samples: Iterable[FlowSample], focal: float, eps_min: float = EPS_MIN) -> list[InvariantRecord]:
    """One invariant record per flow sample, masked rows carrying their status."""
    records = []
    for fs in samples:
        ip, status = try_invariant_domain(fs, focal, eps_min)
        records.append(InvariantRecord(
            point_id=fs.point_id,
            t=fs.t,
            ttc=ip.ttc if ip else None,
            tc=ip.tc if ip else None,
            theta=fs.theta,
            status=status,
        ))
    counts = Counter(rec.status.value for rec in records)
    logger.info("transformed %d samples (%s)", len(records), ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    return records


def ok_points(records: Iterable[InvariantRecord]) -> list[InvariantPoint]:
    return [rec.to_point() for rec in records if rec.status is InvariantStatus.OK]


@dataclass(frozen=True)
class DetectionSummary:
    tracks: int
    moving: int
    stationary: int
    too_short: int

    def line(self) -> str:
        return (
            f"tracks={self.tracks} moving={self.moving} "
            f"stationary={self.stationary} too_short={self.too_short}"
        )


def detect_records(
    records: Sequence[InvariantRecord],
    eps_abs: float,
    eps_rel: float,
    workers: int = 1,
) -> tuple[list[LabelRecord], DetectionSummary]:
    """
    Label every track present in the records.

    Tracks with fewer than two usable samples are labeled too_short
    rather than failing the run.
    """
    all_ids = sorted({rec.point_id for rec in records})
    tracks = group_tracks(ok_points(records))
    usable: list[TrackSeries] = [ts for ts in tracks.values() if len(ts) >= 2]
    labels = {label.point_id: LabelRecord.from_label(label)
              for label in classify_tracks(usable, eps_abs, eps_rel, workers)}

    out: list[LabelRecord] = []
    for pid in all_ids:
        out.append(labels.get(pid) or LabelRecord(pid, False, None, None, LABEL_TOO_SHORT))

    moving = sum(1 for rec in out if rec.moving)
    too_short = sum(1 for rec in out if rec.status == LABEL_TOO_SHORT)
    if too_short:
        logger.warning("%d track(s) too short to classify", too_short)
    summary = DetectionSummary(len(out), moving, len(out) - moving - too_short, too_short)
    return out, summary


def frame_at(points: Iterable[InvariantPoint], t: float, tolerance: float = FRAME_TOLERANCE) -> list[InvariantPoint]:
    return [ip for ip in points if abs(ip.t - t) <= tolerance]


@dataclass(frozen=True)
class Offender:
    point_id: int
    displacement: float
    ttc_slope: float | None


@dataclass(frozen=True)
class ConstancyReport:
    t1: float
    t2: float
    points: int
    metric: float
    offenders: tuple[Offender, ...]

    def text(self) -> str:
        lines = [
            f"shape_constancy t1={self.t1:.17g} t2={self.t2:.17g} points={self.points} metric={self.metric:.17g}",
            "worst offenders:",
        ]
        for off in self.offenders:
            slope = "n/a" if off.ttc_slope is None else f"{off.ttc_slope:.6f}"
            lines.append(f"  point_id={off.point_id} displacement={off.displacement:.17g} ttc_slope={slope}")
        return "\n".join(lines) + "\n"


def constancy_report(records: Sequence[InvariantRecord], t1: float, t2: float, top: int = 5) -> ConstancyReport:
    """
    Shape constancy between the frames at t1 and t2, with the points that
    moved most in the compensated invariant domain.
    """
    points = ok_points(records)
    frame_a = frame_at(points, t1)
    frame_b = frame_at(points, t2)
    if not frame_a:
        raise ValidationError(f"no usable samples at t1={t1}")
    if not frame_b:
        raise ValidationError(f"no usable samples at t2={t2}")

    metric = shape_constancy(frame_a, frame_b)
    tracks = group_tracks(points)
    offenders = []
    for pid, displacement in constancy_offenders(frame_a, frame_b, top):
        track = tracks.get(pid)
        slope = ttc_slope(track) if track is not None and len(track) >= 2 else None
        offenders.append(Offender(pid, displacement, slope))
    logger.info("shape constancy over %d points: %.3g s", len(frame_a), metric)
    return ConstancyReport(t1, t2, len(frame_a), metric, tuple(offenders))
