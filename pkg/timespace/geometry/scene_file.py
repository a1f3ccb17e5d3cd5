"""
Scene file parsing, serialization and primitive expansion.

Format (UTF-8, line-oriented, '#' starts a comment):

    camera speed=<f> focal=<f> width=<i> height=<i>
    point <x> <y> <z> [vx vy vz] [tag=<name>]
    box <cx> <cy> <cz> <sx> <sy> <sz> samples=<i> [vx vy vz] [tag=<name>]
    pyramid <cx> <cy> <cz> <base> <height> samples=<i> [vx vy vz] [tag=<name>]

The camera line must be the first non-comment line and appear once.
Point ids are assigned in file order starting at 0.
"""

import itertools
import logging
from pathlib import Path

import numpy as np

from timespace.errors import (
    DuplicateCamera,
    NonpositiveFocal,
    NonpositiveSpeed,
    SceneSyntaxError,
    ValidationError,
)
from timespace.geometry.types import ZERO, CameraRig, Scene, ScenePoint, Vec3

logger = logging.getLogger(__name__)

CAMERA_KEYS = ("speed", "focal", "width", "height")


def expand_box(
    center: Vec3,
    size: Vec3,
    samples_per_edge: int,
    velocity: Vec3 = ZERO,
    first_id: int = 0,
    tag: str | None = None,
) -> list[ScenePoint]:
    """
    Sample the surface of an axis-aligned box on a uniform grid.

    The n x n x n lattice is walked in (i, j, k) order and only points on
    at least one face are kept, so shared edges and corners appear once.
    """
    if samples_per_edge < 2:
        raise ValidationError(f"samples_per_edge must be >= 2, got {samples_per_edge}")
    if not (size.x > 0 and size.y > 0 and size.z > 0):
        raise ValidationError(f"box size components must be > 0, got {size.as_tuple()}")

    n = samples_per_edge
    unit = np.linspace(-0.5, 0.5, n)
    points: list[ScenePoint] = []
    for i, j, k in itertools.product(range(n), repeat=3):
        if not ({i, j, k} & {0, n - 1}):
            continue
        position = Vec3(
            center.x + float(unit[i]) * size.x,
            center.y + float(unit[j]) * size.y,
            center.z + float(unit[k]) * size.z,
        )
        points.append(ScenePoint(first_id + len(points), position, velocity, tag))
    return points


def expand_pyramid(
    center: Vec3,
    base: float,
    height: float,
    samples_per_edge: int,
    velocity: Vec3 = ZERO,
    first_id: int = 0,
    tag: str | None = None,
) -> list[ScenePoint]:
    """
    Sample the wireframe of a square pyramid whose apex faces the camera.

    The base is centered at `center` in the plane z = center.z and the apex
    sits at center - (0, 0, height). Emits the 5 vertices, then
    `samples_per_edge` interior points on each of the 8 edges.
    """
    if samples_per_edge < 0:
        raise ValidationError(f"samples_per_edge must be >= 0, got {samples_per_edge}")
    if not (base > 0 and height > 0):
        raise ValidationError(f"pyramid base and height must be > 0, got {base}, {height}")

    h = base / 2.0
    corners = [
        Vec3(center.x - h, center.y - h, center.z),
        Vec3(center.x + h, center.y - h, center.z),
        Vec3(center.x + h, center.y + h, center.z),
        Vec3(center.x - h, center.y + h, center.z),
    ]
    apex = Vec3(center.x, center.y, center.z - height)
    edges = [(corners[i], corners[(i + 1) % 4]) for i in range(4)]
    edges += [(corner, apex) for corner in corners]

    positions = corners + [apex]
    n = samples_per_edge
    for a, b in edges:
        for k in range(1, n + 1):
            lam = k / (n + 1)
            positions.append(a + (b - a).scaled(lam))

    return [ScenePoint(first_id + i, pos, velocity, tag) for i, pos in enumerate(positions)]


def _split_tokens(tokens: list[str], line_no: int) -> tuple[list[float], dict[str, str]]:
    numbers: list[float] = []
    options: dict[str, str] = {}
    for token in tokens:
        if "=" in token:
            key, _, value = token.partition("=")
            if not key or not value:
                raise SceneSyntaxError(line_no, f"malformed option '{token}'")
            if key in options:
                raise SceneSyntaxError(line_no, f"option '{key}' given twice")
            options[key] = value
            continue
        try:
            numbers.append(float(token))
        except ValueError:
            raise SceneSyntaxError(line_no, f"expected a number, got '{token}'") from None
    return numbers, options


def _parse_camera(tokens: list[str], line_no: int) -> CameraRig:
    numbers, options = _split_tokens(tokens, line_no)
    if numbers:
        raise SceneSyntaxError(line_no, "camera takes key=value options only")
    unknown = set(options) - set(CAMERA_KEYS)
    missing = [k for k in CAMERA_KEYS if k not in options]
    if unknown:
        raise SceneSyntaxError(line_no, f"unknown camera option(s): {', '.join(sorted(unknown))}")
    if missing:
        raise SceneSyntaxError(line_no, f"camera missing option(s): {', '.join(missing)}")
    try:
        speed = float(options["speed"])
        focal = float(options["focal"])
        width = int(options["width"])
        height = int(options["height"])
    except ValueError as e:
        raise SceneSyntaxError(line_no, f"bad camera value: {e}") from None

    if not speed > 0:
        raise NonpositiveSpeed(f"line {line_no}: camera speed must be > 0, got {speed}")
    if not focal > 0:
        raise NonpositiveFocal(f"line {line_no}: camera focal must be > 0, got {focal}")
    try:
        return CameraRig(speed=speed, focal=focal, width=width, height=height)
    except ValidationError as e:
        raise SceneSyntaxError(line_no, str(e)) from None


def _velocity(numbers: list[float], fixed: int, line_no: int, kind: str) -> Vec3:
    extra = numbers[fixed:]
    if len(extra) == 0:
        return ZERO
    if len(extra) == 3:
        return Vec3(*extra)
    raise SceneSyntaxError(line_no, f"{kind} takes {fixed} or {fixed + 3} numbers, got {len(numbers)}")


def _samples(options: dict[str, str], line_no: int, kind: str) -> int:
    if "samples" not in options:
        raise SceneSyntaxError(line_no, f"{kind} requires samples=<i>")
    try:
        return int(options["samples"])
    except ValueError:
        raise SceneSyntaxError(line_no, f"samples must be an integer, got '{options['samples']}'") from None


def _check_options(options: dict[str, str], allowed: set[str], line_no: int, kind: str) -> None:
    unknown = set(options) - allowed
    if unknown:
        raise SceneSyntaxError(line_no, f"unknown {kind} option(s): {', '.join(sorted(unknown))}")


def _parse_primitive(keyword: str, tokens: list[str], line_no: int, first_id: int) -> list[ScenePoint]:
    numbers, options = _split_tokens(tokens, line_no)
    tag = options.get("tag")
    try:
        if keyword == "point":
            _check_options(options, {"tag"}, line_no, keyword)
            if len(numbers) < 3:
                raise SceneSyntaxError(line_no, f"point takes 3 or 6 numbers, got {len(numbers)}")
            velocity = _velocity(numbers, 3, line_no, keyword)
            return [ScenePoint(first_id, Vec3(*numbers[:3]), velocity, tag)]

        if keyword == "box":
            _check_options(options, {"tag", "samples"}, line_no, keyword)
            if len(numbers) < 6:
                raise SceneSyntaxError(line_no, f"box takes 6 or 9 numbers, got {len(numbers)}")
            velocity = _velocity(numbers, 6, line_no, keyword)
            return expand_box(
                Vec3(*numbers[:3]),
                Vec3(*numbers[3:6]),
                _samples(options, line_no, keyword),
                velocity,
                first_id,
                tag,
            )

        if keyword == "pyramid":
            _check_options(options, {"tag", "samples"}, line_no, keyword)
            if len(numbers) < 5:
                raise SceneSyntaxError(line_no, f"pyramid takes 5 or 8 numbers, got {len(numbers)}")
            velocity = _velocity(numbers, 5, line_no, keyword)
            return expand_pyramid(
                Vec3(*numbers[:3]),
                numbers[3],
                numbers[4],
                _samples(options, line_no, keyword),
                velocity,
                first_id,
                tag,
            )
    except SceneSyntaxError:
        raise
    except ValidationError as e:
        raise SceneSyntaxError(line_no, str(e)) from None

    raise SceneSyntaxError(line_no, f"unknown keyword '{keyword}'")


def parse_scene(text: str) -> Scene:
    """
    Parse scene-file contents into a Scene.

    Raises:
        SceneSyntaxError: on any malformed line (carries the line number)
        NonpositiveSpeed, NonpositiveFocal: on an invalid camera line
        DuplicateCamera: if a second camera line appears
    """
    rig: CameraRig | None = None
    points: list[ScenePoint] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *tokens = line.split()

        if keyword == "camera":
            if rig is not None:
                raise DuplicateCamera(f"line {line_no}: camera already defined")
            rig = _parse_camera(tokens, line_no)
            continue

        if rig is None:
            raise SceneSyntaxError(line_no, "the camera line must come first")
        points.extend(_parse_primitive(keyword, tokens, line_no, first_id=len(points)))

    if rig is None:
        raise SceneSyntaxError(0, "no camera line")
    if not points:
        raise SceneSyntaxError(0, "scene has no points")

    logger.debug("parsed scene with %d points", len(points))
    return Scene(tuple(points), rig)


def load_scene(path: str | Path) -> Scene:
    """Read and parse a scene file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise SceneSyntaxError(0, f"{path} is not valid UTF-8 (byte {e.start})") from None
    return parse_scene(text)


def _g(value: float) -> str:
    return f"{value:.17g}"


def format_scene(scene: Scene) -> str:
    """Serialize a scene as a camera line plus one point line per point."""
    rig = scene.rig
    lines = [
        f"camera speed={_g(rig.speed)} focal={_g(rig.focal)} width={rig.width} height={rig.height}"
    ]
    for p in sorted(scene.points, key=lambda q: q.id):
        fields = ["point", *(_g(c) for c in p.position0.as_tuple())]
        if not p.stationary:
            fields.extend(_g(c) for c in p.velocity.as_tuple())
        if p.tag:
            fields.append(f"tag={p.tag}")
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"
