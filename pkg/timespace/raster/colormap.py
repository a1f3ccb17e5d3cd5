"""Blue-to-red color coding of invariant maps."""

from dataclasses import dataclass

import numpy as np
from matplotlib.colors import hsv_to_rgb

from timespace.errors import BadRange, DimensionMismatch
from timespace.raster.splat import ScalarGrid

HUE_SPAN_DEG = 240.0


@dataclass
class RgbImage:
    """8-bit RGB image; pixels has shape (height, width, 3)."""
    width: int
    height: int
    pixels: np.ndarray

    @classmethod
    def black(cls, width: int, height: int) -> "RgbImage":
        return cls(width, height, np.zeros((height, width, 3), dtype=np.uint8))


def _check_range(vmin: float, vmax: float) -> None:
    if not vmax > vmin:
        raise BadRange(f"vmax must exceed vmin, got vmin={vmin} vmax={vmax}")


def normalize(values: np.ndarray, vmin: float, vmax: float) -> np.ndarray:
    """clamp((v - vmin) / (vmax - vmin), 0, 1); NaN maps to 0."""
    _check_range(vmin, vmax)
    u = (np.asarray(values, dtype=np.float64) - vmin) / (vmax - vmin)
    return np.clip(np.nan_to_num(u, nan=0.0), 0.0, 1.0)


def auto_range(grid: ScalarGrid, percentile: float = 99.0) -> tuple[float, float]:
    """(0, p-th percentile of valid values); (0, 1) when nothing usable is valid."""
    valid = grid.valid_values()
    if valid.size == 0:
        return 0.0, 1.0
    vmax = float(np.percentile(valid, percentile))
    if not vmax > 0.0:
        return 0.0, 1.0
    return 0.0, vmax


def colorize(grid: ScalarGrid, vmin: float, vmax: float) -> RgbImage:
    """
    Map valid pixels through hue = 240 deg * (1 - u) at full saturation
    and value; masked pixels are black.

    Raises:
        BadRange: if vmax <= vmin
    """
    u = normalize(grid.values, vmin, vmax)
    hsv = np.stack([HUE_SPAN_DEG * (1.0 - u) / 360.0, np.ones_like(u), np.ones_like(u)], axis=-1)
    rgb = np.rint(hsv_to_rgb(hsv) * 255.0).astype(np.uint8)
    rgb[~grid.mask] = 0
    return RgbImage(grid.width, grid.height, rgb)


def depth_range(grid: ScalarGrid) -> tuple[float, float]:
    """(nearest, farthest) valid depth; (0, 1) for an empty grid."""
    valid = grid.valid_values()
    if valid.size == 0:
        return 0.0, 1.0
    near, far = float(valid.min()), float(valid.max())
    return (near, far) if far > near else (near, near + 1.0)


def shade(grid: ScalarGrid, near: float, far: float) -> RgbImage:
    """Gray levels from white at `near` down to 25% at `far`; unhit pixels are black."""
    level = 1.0 - 0.75 * normalize(grid.values, near, far)
    gray = np.rint(level * 255.0).astype(np.uint8)
    rgb = np.repeat(gray[..., None], 3, axis=-1)
    rgb[~grid.mask] = 0
    return RgbImage(grid.width, grid.height, rgb)


def combine(
    ttc_inv: ScalarGrid,
    tc_inv: ScalarGrid,
    ranges: tuple[tuple[float, float], tuple[float, float]],
) -> RgbImage:
    """
    Red carries normalized 1/TTC, green normalized 1/Time-Clearance.

    A pixel is black only when masked in both maps; a channel whose map
    is masked at that pixel contributes 0.

    Raises:
        DimensionMismatch: if the grids differ in size
        BadRange: if either range is empty
    """
    if (ttc_inv.width, ttc_inv.height) != (tc_inv.width, tc_inv.height):
        raise DimensionMismatch(
            f"cannot combine {ttc_inv.width}x{ttc_inv.height} with {tc_inv.width}x{tc_inv.height}"
        )
    (ttc_lo, ttc_hi), (tc_lo, tc_hi) = ranges
    red = np.where(ttc_inv.mask, normalize(ttc_inv.values, ttc_lo, ttc_hi), 0.0)
    green = np.where(tc_inv.mask, normalize(tc_inv.values, tc_lo, tc_hi), 0.0)

    rgb = np.zeros((ttc_inv.height, ttc_inv.width, 3), dtype=np.uint8)
    rgb[..., 0] = np.rint(red * 255.0).astype(np.uint8)
    rgb[..., 1] = np.rint(green * 255.0).astype(np.uint8)
    rgb[~(ttc_inv.mask | tc_inv.mask)] = 0
    return RgbImage(ttc_inv.width, ttc_inv.height, rgb)
