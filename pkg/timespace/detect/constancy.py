"""
Constancy analysis in the invariant domain and moving-point detection.

Stationary points keep a constant Time-Clearance and a TTC that decays at
unit rate; both residuals below measure departures from that, using the
median as the reference value. Only invariant-domain data is consulted.
"""

import logging
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

import numpy as np

from timespace.errors import IdMismatch, TooShort, ValidationError
from timespace.invariants.core import InvariantPoint, embed

logger = logging.getLogger(__name__)

DEFAULT_EPS_ABS = 0.01
DEFAULT_EPS_REL = 0.02


@dataclass(frozen=True)
class TrackSeries:
    """Time-ordered invariant samples of one point."""
    point_id: int
    samples: tuple[InvariantPoint, ...]

    def __post_init__(self):
        samples = tuple(self.samples)
        object.__setattr__(self, "samples", samples)
        for ip in samples:
            if ip.point_id != self.point_id:
                raise ValidationError(f"sample of point {ip.point_id} in track {self.point_id}")
        times = [ip.t for ip in samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError(f"track {self.point_id} timestamps are not strictly increasing")

    def __len__(self) -> int:
        return len(self.samples)

    def times(self) -> np.ndarray:
        return np.array([ip.t for ip in self.samples], dtype=np.float64)

    def tcs(self) -> np.ndarray:
        return np.array([ip.tc for ip in self.samples], dtype=np.float64)

    def ttcs(self) -> np.ndarray:
        return np.array([ip.ttc for ip in self.samples], dtype=np.float64)


@dataclass(frozen=True)
class DetectionLabel:
    point_id: int
    moving: bool
    tc_residual: float
    ttc_residual: float


@dataclass(frozen=True)
class DetectionScore:
    precision: float
    recall: float
    tp: int
    fp: int
    fn: int


def _require_two(ts: TrackSeries) -> None:
    if len(ts) < 2:
        raise TooShort(f"track {ts.point_id} has {len(ts)} sample(s); need at least 2")


def _max_deviation_from_median(values: np.ndarray) -> float:
    return float(np.max(np.abs(values - np.median(values))))


def tc_residual(ts: TrackSeries) -> float:
    """max |tc(t) - median(tc)| over the track."""
    _require_two(ts)
    return _max_deviation_from_median(ts.tcs())


def ttc_drift_residual(ts: TrackSeries) -> float:
    """max |(ttc(t) + t) - median(ttc + t)| over the track."""
    _require_two(ts)
    return _max_deviation_from_median(ts.ttcs() + ts.times())


def ttc_slope(ts: TrackSeries) -> float:
    """Least-squares slope of ttc against t (-1 for a stationary point)."""
    _require_two(ts)
    slope, _ = np.polyfit(ts.times(), ts.ttcs(), 1)
    return float(slope)


def classify(
    ts: TrackSeries,
    eps_abs: float = DEFAULT_EPS_ABS,
    eps_rel: float = DEFAULT_EPS_REL,
) -> DetectionLabel:
    """
    Label a track as moving when either residual exceeds
    eps_abs + eps_rel * |median tc|.
    """
    tc_res = tc_residual(ts)
    ttc_res = ttc_drift_residual(ts)
    eps = eps_abs + eps_rel * abs(float(np.median(ts.tcs())))
    return DetectionLabel(
        point_id=ts.point_id,
        moving=bool(tc_res > eps or ttc_res > eps),
        tc_residual=tc_res,
        ttc_residual=ttc_res,
    )


def group_tracks(points: Iterable[InvariantPoint]) -> dict[int, TrackSeries]:
    """Group invariant samples by point id, sorted by time, keyed in id order."""
    by_id: dict[int, list[InvariantPoint]] = defaultdict(list)
    for ip in points:
        by_id[ip.point_id].append(ip)
    return {
        pid: TrackSeries(pid, tuple(sorted(samples, key=lambda ip: ip.t)))
        for pid, samples in sorted(by_id.items())
    }


def classify_tracks(
    tracks: Sequence[TrackSeries],
    eps_abs: float = DEFAULT_EPS_ABS,
    eps_rel: float = DEFAULT_EPS_REL,
    workers: int = 1,
) -> list[DetectionLabel]:
    """Classify many tracks; output order follows input order for any worker count."""

    def run(ts: TrackSeries) -> DetectionLabel:
        return classify(ts, eps_abs, eps_rel)

    if workers <= 1:
        return [run(ts) for ts in tracks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, tracks))


def _paired_distances(
    frame_a: Sequence[InvariantPoint], frame_b: Sequence[InvariantPoint]
) -> dict[int, float]:
    a_by_id = {ip.point_id: ip for ip in frame_a}
    b_by_id = {ip.point_id: ip for ip in frame_b}
    if len(a_by_id) != len(frame_a) or len(b_by_id) != len(frame_b):
        raise IdMismatch("a frame lists the same point id twice")
    if a_by_id.keys() != b_by_id.keys():
        only_a = sorted(a_by_id.keys() - b_by_id.keys())
        only_b = sorted(b_by_id.keys() - a_by_id.keys())
        raise IdMismatch(f"frames differ in point ids (only in first: {only_a[:5]}, only in second: {only_b[:5]})")

    distances: dict[int, float] = {}
    for pid in sorted(a_by_id):
        a, b = a_by_id[pid], b_by_id[pid]
        ea = embed(a)
        eb = embed(InvariantPoint(b.ttc + (b.t - a.t), b.tc, b.theta, a.t, pid))
        distances[pid] = math.dist((ea.ex, ea.ey, ea.ez), (eb.ex, eb.ey, eb.ez))
    return distances


def shape_constancy(frame_a: Sequence[InvariantPoint], frame_b: Sequence[InvariantPoint]) -> float:
    """
    Largest embedded displacement between two TTC-compensated frames.

    frame_b's TTCs are shifted by +(t_b - t_a) before embedding, so a
    rigid stationary scene scores 0.

    Raises:
        IdMismatch: if the frames do not cover the same point ids
    """
    distances = _paired_distances(frame_a, frame_b)
    return max(distances.values(), default=0.0)


def constancy_offenders(
    frame_a: Sequence[InvariantPoint], frame_b: Sequence[InvariantPoint], top: int = 5
) -> list[tuple[int, float]]:
    """Point ids with the largest compensated displacement, worst first (ties by id)."""
    distances = _paired_distances(frame_a, frame_b)
    ranked = sorted(distances.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:top]


class Labeled(Protocol):
    point_id: int
    moving: bool


def score_detection(labels: Iterable[Labeled], truth: dict[int, bool]) -> DetectionScore:
    """
    Precision and recall of moving labels against known motion.

    A truly moving id with no label at all counts as a false negative.
    """
    tp = fp = fn = 0
    labeled: set[int] = set()
    for label in labels:
        labeled.add(label.point_id)
        actual = truth.get(label.point_id, False)
        if label.moving and actual:
            tp += 1
        elif label.moving:
            fp += 1
        elif actual:
            fn += 1
    fn += sum(1 for pid, moving in truth.items() if moving and pid not in labeled)
    precision = tp / (tp + fp) if tp + fp else 1.0
    recall = tp / (tp + fn) if tp + fn else 1.0
    return DetectionScore(precision, recall, tp, fp, fn)
