import numpy as np
import pytest
from PIL import Image

from _helpers import point
from timespace.errors import BadRange, DimensionMismatch, ValidationError
from timespace.geometry import CameraRig
from timespace.geometry.presets import street_movers_scene
from timespace.raster import (
    FRAME,
    MapKind,
    RgbImage,
    ScalarGrid,
    ValueRange,
    auto_range,
    colorize,
    combine,
    depth_range,
    normalize,
    read_ppm,
    render_frame,
    render_sequence,
    shade,
    splat_depth,
    splat_map,
    write_grid_csv,
    write_ppm,
)

RIG_64 = CameraRig(speed=1.0, focal=16.0, width=64, height=64)


def _grid(values, mask=None):
    values = np.asarray(values, dtype=np.float64)
    h, w = values.shape
    grid = ScalarGrid.empty(w, h)
    grid.mask[:] = True if mask is None else mask
    grid.values[:] = np.where(grid.mask, values, np.nan)
    return grid


class TestSplat:
    @pytest.mark.parametrize("kind", [MapKind.TTC_INV, MapKind.TC_INV])
    def test_single_point(self, kind):
        grid = splat_map([point(0, 1, 0, 1)], RIG_64, 0.0, kind)
        assert grid.mask.sum() == 1
        assert grid.mask[32, 48]
        assert grid.values[32, 48] == pytest.approx(1.0)
        assert grid.point_ids[32, 48] == 0

    def test_empty_scene(self):
        grid = splat_map([], RIG_64, 0.0, "ttc_inv")
        assert not grid.mask.any()
        assert np.isnan(grid.values).all()

    def test_nearest_point_wins(self):
        grid = splat_map([point(1, 2, 0, 10), point(0, 1, 0, 5)], RIG_64, 0.0, "ttc_inv")
        col = int(np.floor(16 * 0.2 + 32))
        assert grid.point_ids[32, col] == 0
        assert grid.zbuffer[32, col] == pytest.approx(5.0)
        assert grid.values[32, col] == pytest.approx(0.2)

    def test_equal_depth_goes_to_smaller_id(self):
        grid = splat_map([point(4, 1, 0, 5), point(2, 1, 0, 5)], RIG_64, 0.0, "tc_inv")
        assert grid.point_ids[32, 35] == 2

    def test_foe_neighborhood_is_masked(self):
        rig = CameraRig(1.0, 256.0, 512, 512)
        grid = splat_map([point(0, 0.002, 0, 5), point(1, 0, 0, 6)], rig, 0.0, "ttc_inv")
        assert grid.point_ids[256, 256] == 0
        assert not grid.mask.any()

    def test_behind_camera_is_skipped(self):
        grid = splat_map([point(0, 1, 0, 1)], RIG_64, 2.0, "ttc_inv")
        assert (grid.point_ids == -1).all()

    def test_threads_do_not_change_the_grid(self):
        scene = street_movers_scene()
        sequential = splat_map(scene, scene.rig, 1.0, "tc_inv", workers=1)
        threaded = splat_map(scene, scene.rig, 1.0, "tc_inv", workers=4)
        np.testing.assert_array_equal(threaded.values, sequential.values)
        np.testing.assert_array_equal(threaded.point_ids, sequential.point_ids)
        np.testing.assert_array_equal(threaded.mask, sequential.mask)
        assert np.isfinite(sequential.valid_values()).all()


class TestColormap:
    def test_endpoints_and_midpoint(self):
        img = colorize(_grid([[0.0, 0.5, 1.0]]), 0.0, 1.0)
        assert img.pixels[0].tolist() == [[0, 0, 255], [0, 255, 0], [255, 0, 0]]

    def test_clamped_outside_range(self):
        img = colorize(_grid([[-3.0, 7.0]]), 0.0, 1.0)
        assert img.pixels[0].tolist() == [[0, 0, 255], [255, 0, 0]]

    def test_masked_is_black(self):
        img = colorize(_grid([[0.5, 0.5]], mask=np.array([[False, True]])), 0.0, 1.0)
        assert img.pixels[0, 0].tolist() == [0, 0, 0]
        assert img.pixels[0, 1].tolist() == [0, 255, 0]

    def test_bad_range(self):
        with pytest.raises(BadRange):
            colorize(_grid([[0.5]]), 1.0, 1.0)
        with pytest.raises(BadRange):
            normalize(np.zeros(3), 2.0, 1.0)

    def test_auto_range(self):
        grid = _grid(np.arange(1.0, 101.0).reshape(10, 10))
        lo, hi = auto_range(grid)
        assert lo == 0.0
        assert hi == pytest.approx(np.percentile(np.arange(1.0, 101.0), 99))

    def test_auto_range_without_valid_pixels(self):
        assert auto_range(ScalarGrid.empty(4, 4)) == (0.0, 1.0)


class TestCombine:
    def test_both_masked_is_black(self):
        empty = ScalarGrid.empty(1, 1)
        img = combine(empty, empty, ((0.0, 1.0), (0.0, 1.0)))
        assert img.pixels[0, 0].tolist() == [0, 0, 0]

    def test_channels(self):
        img = combine(_grid([[1.0]]), _grid([[0.0]]), ((0.0, 1.0), (0.0, 1.0)))
        assert img.pixels[0, 0].tolist() == [255, 0, 0]
        img = combine(_grid([[0.0]]), _grid([[2.0]]), ((0.0, 1.0), (0.0, 4.0)))
        assert img.pixels[0, 0].tolist() == [0, 128, 0]

    def test_one_masked_channel(self):
        img = combine(ScalarGrid.empty(1, 1), _grid([[1.0]]), ((0.0, 1.0), (0.0, 1.0)))
        assert img.pixels[0, 0].tolist() == [0, 255, 0]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            combine(ScalarGrid.empty(64, 64), ScalarGrid.empty(32, 32), ((0.0, 1.0), (0.0, 1.0)))


class TestPpm:
    def test_single_red_pixel_bytes(self, tmp_path):
        img = RgbImage(1, 1, np.array([[[255, 0, 0]]], dtype=np.uint8))
        path = tmp_path / "red.ppm"
        write_ppm(img, path)
        assert path.read_bytes() == b"P6\n1 1\n255\n\xff\x00\x00"

    def test_black_pair(self, tmp_path):
        path = tmp_path / "black.ppm"
        write_ppm(RgbImage.black(2, 1), path)
        assert path.read_bytes() == b"P6\n2 1\n255\n" + bytes(6)

    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(0)
        img = RgbImage(5, 3, rng.integers(0, 256, (3, 5, 3), dtype=np.uint8))
        path = tmp_path / "noise.ppm"
        write_ppm(img, path)
        back = read_ppm(path)
        assert (back.width, back.height) == (5, 3)
        np.testing.assert_array_equal(back.pixels, img.pixels)
        with Image.open(path) as pil:
            assert pil.mode == "RGB"
            assert pil.size == (5, 3)
            np.testing.assert_array_equal(np.asarray(pil), img.pixels)

    def test_reader_skips_comments(self, tmp_path):
        path = tmp_path / "commented.ppm"
        path.write_bytes(b"P6\n# made by hand\n2 1\n255\n" + bytes([1, 2, 3, 4, 5, 6]))
        assert read_ppm(path).pixels.tolist() == [[[1, 2, 3], [4, 5, 6]]]

    def test_reader_rejects_ascii_ppm(self, tmp_path):
        path = tmp_path / "ascii.ppm"
        path.write_bytes(b"P3\n1 1\n255\n255 0 0\n")
        with pytest.raises(ValidationError):
            read_ppm(path)

    def test_grid_csv(self, tmp_path):
        grid = _grid([[0.25, 1.0], [2.0, 3.0]], mask=np.array([[True, False], [True, True]]))
        path = tmp_path / "grid.csv"
        write_grid_csv(grid, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "x,y,value,valid"
        assert lines[1:3] == ["0,0,0.25,1", "1,0,,0"]
        assert len(lines) == 5


class TestRender:
    def test_everything_behind_is_black(self):
        for kind in ("frame", "ttc_inv", "tc_inv", "combined"):
            img = render_frame([point(0, 1, 0, 1)], RIG_64, 5.0, kind)
            assert not img.pixels.any()

    def test_fixed_range(self):
        img = render_frame([point(0, 1, 0, 1)], RIG_64, 0.0, "ttc_inv", ValueRange(0.0, 1.0))
        assert img.pixels[32, 48].tolist() == [255, 0, 0]
        assert img.pixels.sum() == 255

    def test_sequence_names(self, tmp_path):
        points = [point(0, 1, 0, 4), point(1, -1, 1, 6)]
        written = render_sequence(points, RIG_64, [0.0, 1.0], tmp_path / "seq")
        assert sorted(p.name for p in written) == [
            "combined_000.ppm", "combined_001.ppm",
            "frame_000.ppm", "frame_001.ppm",
            "tc_inv_000.ppm", "tc_inv_001.ppm",
            "ttc_inv_000.ppm", "ttc_inv_001.ppm",
        ]
        assert all(read_ppm(p).width == 64 for p in written)


class TestDepthFrame:
    def test_nearest_point_wins_the_pixel(self):
        near, far = point(0, 1, 0, 1), point(1, 2, 0, 2)
        grid = splat_depth([far, near], RIG_64, 0.0)
        assert grid.mask.sum() == 1
        assert grid.values[32, 48] == pytest.approx(1.0)
        assert grid.point_ids[32, 48] == 0

    def test_on_axis_point_is_still_drawn(self):
        grid = splat_depth([point(0, 0, 0, 5)], RIG_64, 0.0)
        assert grid.mask[32, 32]
        assert not splat_map([point(0, 0, 0, 5)], RIG_64, 0.0, "ttc_inv").mask.any()

    def test_shading_runs_white_to_dark(self):
        points = [point(0, 1, 0, 4), point(1, -1, 0, 8)]
        img = render_frame(points, RIG_64, 0.0, FRAME)
        near_col, far_col = 36, 30
        assert img.pixels[32, near_col].tolist() == [255, 255, 255]
        assert img.pixels[32, far_col].tolist() == [64, 64, 64]
        assert img.pixels.astype(int).sum() == 3 * (255 + 64)

    def test_depth_range(self):
        assert depth_range(_grid([[2.0, 5.0]])) == (2.0, 5.0)
        assert depth_range(_grid([[3.0]])) == (3.0, 4.0)
        assert depth_range(ScalarGrid.empty(2, 2)) == (0.0, 1.0)

    def test_shade_masks_black(self):
        img = shade(_grid([[1.0, 2.0]], mask=np.array([[True, False]])), 1.0, 2.0)
        assert img.pixels[0, 0].tolist() == [255, 255, 255]
        assert img.pixels[0, 1].tolist() == [0, 0, 0]

    def test_frame_ignores_value_range(self):
        points = [point(0, 1, 0, 4)]
        fixed = render_frame(points, RIG_64, 0.0, FRAME, ValueRange(0.0, 0.5))
        assert (fixed.pixels == render_frame(points, RIG_64, 0.0, FRAME).pixels).all()
