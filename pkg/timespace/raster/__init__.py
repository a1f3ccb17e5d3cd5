"""Dense invariant maps, depth views and their color-coded images."""

from timespace.raster.colormap import RgbImage, auto_range, colorize, combine, depth_range, normalize, shade
from timespace.raster.ppm import read_ppm, write_grid_csv, write_ppm
from timespace.raster.render import COMBINED, FRAME, RENDER_KINDS, ValueRange, render_frame, render_sequence
from timespace.raster.splat import DEFAULT_FOE_RADIUS, MapKind, ScalarGrid, splat_depth, splat_map

__all__ = [
    "COMBINED",
    "DEFAULT_FOE_RADIUS",
    "FRAME",
    "MapKind",
    "RENDER_KINDS",
    "RgbImage",
    "ScalarGrid",
    "ValueRange",
    "auto_range",
    "colorize",
    "combine",
    "depth_range",
    "normalize",
    "read_ppm",
    "render_frame",
    "render_sequence",
    "shade",
    "splat_depth",
    "splat_map",
    "write_grid_csv",
    "write_ppm",
]
