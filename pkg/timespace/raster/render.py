"""Frame rendering: one PPM per map kind and time instant."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from timespace.geometry.types import CameraRig, Scene, ScenePoint
from timespace.raster.colormap import RgbImage, auto_range, colorize, combine, depth_range, shade
from timespace.raster.ppm import write_ppm
from timespace.raster.splat import MapKind, ScalarGrid, splat_depth, splat_map

logger = logging.getLogger(__name__)

COMBINED = "combined"
# plain depth-shaded camera image, no invariants
FRAME = "frame"
RENDER_KINDS = (FRAME, MapKind.TTC_INV.value, MapKind.TC_INV.value, COMBINED)


@dataclass(frozen=True)
class ValueRange:
    """Color range; vmax=None means the 99th percentile of the valid values."""
    vmin: float = 0.0
    vmax: float | None = None

    def resolve(self, grid: ScalarGrid) -> tuple[float, float]:
        if self.vmax is not None:
            return self.vmin, self.vmax
        _, vmax = auto_range(grid)
        return self.vmin, vmax if vmax > self.vmin else self.vmin + 1.0


def _grids(points, rig: CameraRig, t: float, kind: str, workers: int) -> dict[str, ScalarGrid]:
    if kind == FRAME:
        return {FRAME: splat_depth(points, rig, t, workers=workers)}
    kinds = (MapKind.TTC_INV, MapKind.TC_INV) if kind == COMBINED else (MapKind(kind),)
    return {k: splat_map(points, rig, t, k, workers=workers) for k in kinds}


def _resolve(grids: dict[str, ScalarGrid], value_range: ValueRange) -> dict[str, tuple[float, float]]:
    # depth shading ignores the value range
    return {
        k: depth_range(grid) if k == FRAME else value_range.resolve(grid)
        for k, grid in grids.items()
    }


def _paint(grids: dict[str, ScalarGrid], kind: str, ranges: dict[str, tuple[float, float]]) -> RgbImage:
    if kind == FRAME:
        return shade(grids[FRAME], *ranges[FRAME])
    if kind == COMBINED:
        return combine(
            grids[MapKind.TTC_INV],
            grids[MapKind.TC_INV],
            (ranges[MapKind.TTC_INV], ranges[MapKind.TC_INV]),
        )
    (map_kind, grid), = grids.items()
    return colorize(grid, *ranges[map_kind])


def render_frame(
    points: Scene | Sequence[ScenePoint],
    rig: CameraRig,
    t: float,
    kind: str,
    value_range: ValueRange = ValueRange(),
    workers: int = 1,
) -> RgbImage:
    """Splat and paint one frame; `combined` resolves a range per channel."""
    grids = _grids(points, rig, t, kind, workers)
    return _paint(grids, kind, _resolve(grids, value_range))


def render_sequence(
    points: Scene | Sequence[ScenePoint],
    rig: CameraRig,
    times: Sequence[float],
    out_dir: str | Path,
    kinds: Sequence[str] = RENDER_KINDS,
    value_range: ValueRange = ValueRange(),
    workers: int = 1,
) -> list[Path]:
    """
    Write `<kind>_<k:03d>.ppm` for every kind and time.

    Ranges are resolved on the first frame and held for the rest of the
    sequence so colors stay comparable.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for kind in kinds:
        ranges = None
        for k, t in enumerate(times):
            grids = _grids(points, rig, t, kind, workers)
            if ranges is None:
                ranges = _resolve(grids, value_range)
            path = out_dir / f"{kind}_{k:03d}.ppm"
            write_ppm(_paint(grids, kind, ranges), path)
            written.append(path)
    logger.info("wrote %d frames to %s", len(written), out_dir)
    return written
