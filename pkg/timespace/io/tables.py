"""
CSV tables exchanged between pipeline stages.

Floats are written with 17 significant digits so every stage reads back
exactly what the previous one computed.
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from timespace.detect.constancy import DetectionLabel
from timespace.errors import MalformedRow
from timespace.flow.projection import FlowQuality, FlowSample
from timespace.invariants.core import InvariantPoint, InvariantStatus, embed

TRACKS_HEADER = ["point_id", "t", "u", "v", "rho", "theta", "rho_dot", "quality"]
INVARIANTS_HEADER = ["point_id", "t", "ttc", "tc", "theta", "status"]
LABELS_HEADER = ["point_id", "moving", "tc_residual", "ttc_residual", "status"]
EMBEDDED_HEADER = ["point_id", "t", "ex", "ey", "ez", "ez_compensated"]

LABEL_OK = "ok"
LABEL_TOO_SHORT = "too_short"


def fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.17g}"


@dataclass(frozen=True)
class InvariantRecord:
    """One invariants-CSV row; ttc and tc are None unless status is ok."""
    point_id: int
    t: float
    ttc: float | None
    tc: float | None
    theta: float
    status: InvariantStatus

    def to_point(self) -> InvariantPoint:
        return InvariantPoint(ttc=self.ttc, tc=self.tc, theta=self.theta, t=self.t, point_id=self.point_id)


@dataclass(frozen=True)
class LabelRecord:
    point_id: int
    moving: bool
    tc_residual: float | None
    ttc_residual: float | None
    status: str = LABEL_OK

    @classmethod
    def from_label(cls, label: DetectionLabel) -> "LabelRecord":
        return cls(label.point_id, label.moving, label.tc_residual, label.ttc_residual, LABEL_OK)


def _writer(f):
    return csv.writer(f, lineterminator="\n")


def _rows(path: str | Path, header: Sequence[str]) -> Iterator[tuple[int, dict[str, str]]]:
    """
    Yield (line number, row) pairs after checking the header.

    Undecodable bytes and CSV-level errors surface as MalformedRow.
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            first = next(reader, None)
            if first is None:
                return
            if first != list(header):
                raise MalformedRow(1, f"expected header {','.join(header)}, got {','.join(first)}")
            for row in reader:
                line = reader.line_num
                if not row:
                    continue
                if len(row) != len(header):
                    raise MalformedRow(line, f"expected {len(header)} fields, got {len(row)}")
                yield line, dict(zip(header, row))
        except UnicodeDecodeError:
            raise MalformedRow(reader.line_num + 1, f"{path} is not valid UTF-8") from None
        except csv.Error as e:
            raise MalformedRow(reader.line_num, str(e)) from None


def _float(row: dict[str, str], key: str, line: int, optional: bool = False) -> float | None:
    text = row[key]
    if optional and text == "":
        return None
    try:
        return float(text)
    except ValueError:
        raise MalformedRow(line, f"field '{key}' is not a number: '{text}'") from None


def _int(row: dict[str, str], key: str, line: int) -> int:
    try:
        return int(row[key])
    except ValueError:
        raise MalformedRow(line, f"field '{key}' is not an integer: '{row[key]}'") from None


def write_tracks(samples: Iterable[FlowSample], path: str | Path) -> int:
    """Write tracks CSV; returns the number of rows."""
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = _writer(f)
        writer.writerow(TRACKS_HEADER)
        for fs in samples:
            writer.writerow([
                fs.point_id, fmt(fs.t), fmt(fs.u), fmt(fs.v),
                fmt(fs.rho), fmt(fs.theta), fmt(fs.rho_dot), fs.quality.value,
            ])
            count += 1
    return count


def read_tracks(path: str | Path) -> list[FlowSample]:
    samples: list[FlowSample] = []
    for line, row in _rows(path, TRACKS_HEADER):
        try:
            quality = FlowQuality(row["quality"])
        except ValueError:
            raise MalformedRow(line, f"unknown quality '{row['quality']}'") from None
        samples.append(FlowSample(
            rho=_float(row, "rho", line),
            theta=_float(row, "theta", line),
            rho_dot=_float(row, "rho_dot", line),
            t=_float(row, "t", line),
            point_id=_int(row, "point_id", line),
            quality=quality,
            u=_float(row, "u", line),
            v=_float(row, "v", line),
        ))
    return samples


def write_invariants(records: Iterable[InvariantRecord], path: str | Path) -> int:
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = _writer(f)
        writer.writerow(INVARIANTS_HEADER)
        for rec in records:
            writer.writerow([rec.point_id, fmt(rec.t), fmt(rec.ttc), fmt(rec.tc), fmt(rec.theta), rec.status.value])
            count += 1
    return count


def read_invariants(path: str | Path) -> list[InvariantRecord]:
    records: list[InvariantRecord] = []
    for line, row in _rows(path, INVARIANTS_HEADER):
        try:
            status = InvariantStatus(row["status"])
        except ValueError:
            raise MalformedRow(line, f"unknown status '{row['status']}'") from None
        ttc = _float(row, "ttc", line, optional=True)
        tc = _float(row, "tc", line, optional=True)
        if status is InvariantStatus.OK and (ttc is None or tc is None):
            raise MalformedRow(line, "status ok requires ttc and tc")
        records.append(InvariantRecord(
            point_id=_int(row, "point_id", line),
            t=_float(row, "t", line),
            ttc=ttc,
            tc=tc,
            theta=_float(row, "theta", line),
            status=status,
        ))
    return records


def write_labels(records: Iterable[LabelRecord], path: str | Path) -> int:
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = _writer(f)
        writer.writerow(LABELS_HEADER)
        for rec in records:
            writer.writerow([
                rec.point_id, str(rec.moving).lower(), fmt(rec.tc_residual), fmt(rec.ttc_residual), rec.status,
            ])
            count += 1
    return count


def read_labels(path: str | Path) -> list[LabelRecord]:
    records: list[LabelRecord] = []
    for line, row in _rows(path, LABELS_HEADER):
        if row["moving"] not in ("true", "false"):
            raise MalformedRow(line, f"moving must be true or false, got '{row['moving']}'")
        records.append(LabelRecord(
            point_id=_int(row, "point_id", line),
            moving=row["moving"] == "true",
            tc_residual=_float(row, "tc_residual", line, optional=True),
            ttc_residual=_float(row, "ttc_residual", line, optional=True),
            status=row["status"],
        ))
    return records


def embedded_rows(points: Iterable[InvariantPoint]) -> Iterator[list[str]]:
    for ip in points:
        e = embed(ip)
        yield [str(ip.point_id), fmt(ip.t), fmt(e.ex), fmt(e.ey), fmt(e.ez), fmt(ip.ttc + ip.t)]


def write_embedded(points: Iterable[InvariantPoint], path: str | Path) -> int:
    """Write the invariant-domain point cloud, with TTC compensated by +t in the last column."""
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = _writer(f)
        writer.writerow(EMBEDDED_HEADER)
        for row in embedded_rows(points):
            writer.writerow(row)
            count += 1
    return count

