"""Binary PPM (P6) and debug CSV output for rasters."""

import csv
from pathlib import Path

import numpy as np

from timespace.errors import ValidationError
from timespace.raster.colormap import RgbImage
from timespace.raster.splat import ScalarGrid


def write_ppm(img: RgbImage, path: str | Path) -> None:
    """Write `P6\\n<w> <h>\\n255\\n` followed by row-major RGB triples."""
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    pixels = np.ascontiguousarray(img.pixels, dtype=np.uint8)
    with open(path, "wb") as f:
        f.write(header)
        f.write(pixels.tobytes())


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < count:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ValidationError("truncated PPM header")
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates the header from the raster
    return tokens, pos + 1


def read_ppm(path: str | Path) -> RgbImage:
    """Read a binary P6 image with maxval 255."""
    data = Path(path).read_bytes()
    tokens, offset = _header_tokens(data, 4)
    if tokens[0] != b"P6":
        raise ValidationError(f"not a binary PPM: magic {tokens[0]!r}")
    width, height, maxval = (int(tok) for tok in tokens[1:])
    if maxval != 255:
        raise ValidationError(f"unsupported PPM maxval {maxval}")
    raster = np.frombuffer(data, dtype=np.uint8, count=width * height * 3, offset=offset)
    return RgbImage(width, height, raster.reshape(height, width, 3).copy())


def write_grid_csv(grid: ScalarGrid, path: str | Path) -> None:
    """Dump a grid as `x,y,value,valid` rows, row-major from the top row."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["x", "y", "value", "valid"])
        for y in range(grid.height):
            for x in range(grid.width):
                valid = bool(grid.mask[y, x])
                value = f"{grid.values[y, x]:.17g}" if valid else ""
                writer.writerow([x, y, value, int(valid)])
