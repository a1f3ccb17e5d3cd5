"""
Dense 1/TTC, 1/Time-Clearance and depth maps by nearest-pixel point splatting.

Each pixel keeps the point with the smallest depth s; equal depths go to
the smaller point id. The reduction is a lexsort, so chunked (threaded)
and sequential splatting produce identical grids.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from timespace.flow.projection import FlowArrays, analytic_flow_arrays, pixel_index
from timespace.geometry.kinematics import scene_arrays
from timespace.geometry.types import CameraRig, Scene, ScenePoint
from timespace.invariants.core import EPS_MIN, STATUS_CODES, InvariantStatus, invariant_arrays

logger = logging.getLogger(__name__)

DEFAULT_FOE_RADIUS = 1.0


class MapKind(str, Enum):
    TTC_INV = "ttc_inv"
    TC_INV = "tc_inv"


@dataclass
class ScalarGrid:
    """
    Row-major per-pixel map.

    values holds NaN wherever mask is False; zbuffer holds +inf and
    point_ids -1 on pixels no point landed on.
    """
    width: int
    height: int
    values: np.ndarray
    mask: np.ndarray
    zbuffer: np.ndarray
    point_ids: np.ndarray

    @classmethod
    def empty(cls, width: int, height: int) -> "ScalarGrid":
        return cls(
            width=width,
            height=height,
            values=np.full((height, width), np.nan),
            mask=np.zeros((height, width), dtype=bool),
            zbuffer=np.full((height, width), np.inf),
            point_ids=np.full((height, width), -1, dtype=np.int64),
        )

    def valid_values(self) -> np.ndarray:
        return self.values[self.mask]


def _nearest_per_pixel(pix: np.ndarray, depth: np.ndarray, ids: np.ndarray) -> np.ndarray:
    """Indices of the winning candidate for every distinct pixel, in pixel order."""
    if pix.size == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.lexsort((ids, depth, pix))
    _, first = np.unique(pix[order], return_index=True)
    return order[first]


def _chunked_winners(pix: np.ndarray, depth: np.ndarray, ids: np.ndarray, workers: int) -> np.ndarray:
    if workers <= 1 or pix.size < 2 * workers:
        return _nearest_per_pixel(pix, depth, ids)

    bounds = np.linspace(0, pix.size, workers + 1).astype(np.int64)
    chunks = [np.arange(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:])]

    def reduce_chunk(idx: np.ndarray) -> np.ndarray:
        return idx[_nearest_per_pixel(pix[idx], depth[idx], ids[idx])]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        partial = np.concatenate(list(pool.map(reduce_chunk, chunks)))
    return partial[_nearest_per_pixel(pix[partial], depth[partial], ids[partial])]


def _visible(flow: FlowArrays, ids: np.ndarray, rig: CameraRig, workers: int) -> tuple[np.ndarray, np.ndarray]:
    """Indices of the nearest in-frame point per hit pixel, with those pixels' flat indices."""
    candidates = np.flatnonzero(flow.in_frame)
    if candidates.size == 0:
        return candidates, candidates
    col, row = pixel_index(flow.u[candidates], flow.v[candidates], rig.width, rig.height)
    pix = row * rig.width + col
    winners = _chunked_winners(pix, flow.s[candidates], ids[candidates], workers)
    return candidates[winners], pix[winners]


def splat_depth(
    points: Scene | Sequence[ScenePoint],
    rig: CameraRig,
    t: float,
    workers: int = 1,
) -> ScalarGrid:
    """Plain camera view at time t: the depth s of the nearest point on every hit pixel."""
    grid = ScalarGrid.empty(rig.width, rig.height)
    arrays = scene_arrays(points)
    if arrays.ids.size == 0:
        return grid

    flow = analytic_flow_arrays(arrays, rig, t)
    chosen, chosen_pix = _visible(flow, arrays.ids, rig, workers)
    grid.values.reshape(-1)[chosen_pix] = flow.s[chosen]
    grid.mask.reshape(-1)[chosen_pix] = True
    grid.zbuffer.reshape(-1)[chosen_pix] = flow.s[chosen]
    grid.point_ids.reshape(-1)[chosen_pix] = arrays.ids[chosen]
    return grid


def splat_map(
    points: Scene | Sequence[ScenePoint],
    rig: CameraRig,
    t: float,
    kind: MapKind | str,
    eps_min: float = EPS_MIN,
    foe_radius: float = DEFAULT_FOE_RADIUS,
    workers: int = 1,
) -> ScalarGrid:
    """
    Project every point at time t and splat 1/ttc or 1/tc into a grid.

    Pixels are masked when unhit, when the visible point is on the axis,
    degenerate, or closer than foe_radius pixels to the FOE.
    """
    kind = MapKind(kind)
    grid = ScalarGrid.empty(rig.width, rig.height)
    arrays = scene_arrays(points)
    if arrays.ids.size == 0:
        return grid

    flow = analytic_flow_arrays(arrays, rig, t)
    chosen, chosen_pix = _visible(flow, arrays.ids, rig, workers)
    if chosen.size == 0:
        logger.debug("no visible points at t=%g", t)
        return grid

    ttc, tc, status = invariant_arrays(flow.rho[chosen], flow.rho_dot[chosen], rig.focal, eps_min)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = 1.0 / ttc if kind is MapKind.TTC_INV else 1.0 / tc
    valid = (
        (status == STATUS_CODES[InvariantStatus.OK])
        & (flow.rho[chosen] >= foe_radius)
        & np.isfinite(value)
    )

    flat_values = grid.values.reshape(-1)
    flat_values[chosen_pix[valid]] = value[valid]
    grid.mask.reshape(-1)[chosen_pix[valid]] = True
    grid.zbuffer.reshape(-1)[chosen_pix] = flow.s[chosen]
    grid.point_ids.reshape(-1)[chosen_pix] = arrays.ids[chosen]

    logger.debug("splatted %s at t=%g: %d hit, %d valid pixels", kind.value, t, chosen.size, int(valid.sum()))
    return grid
