"""Built-in scenes used by the demo and the tests."""

import numpy as np

from timespace.geometry.scene_file import expand_box, expand_pyramid
from timespace.geometry.types import ZERO, CameraRig, Scene, ScenePoint, Vec3

DEFAULT_RIG = {"focal": 256.0, "width": 512, "height": 512}

# (position0, velocity) of the five laterally moving points in the mixed scene
MIXED_MOVERS = (
    ((2.0, 0.0, 5.0), (-0.2, 0.0, 0.0)),
    ((-3.0, 1.0, 8.0), (-0.5, 0.0, 0.0)),
    ((1.0, -4.0, 15.0), (0.0, -0.5, 0.0)),
    ((5.0, 2.0, 20.0), (0.4, 0.4, 0.0)),
    ((-1.0, -2.0, 6.0), (-0.3, -0.3, 0.5)),
)


def _rig(speed: float) -> CameraRig:
    return CameraRig(speed=speed, **DEFAULT_RIG)


def _renumber(points: list[ScenePoint]) -> tuple[ScenePoint, ...]:
    return tuple(ScenePoint(i, p.position0, p.velocity, p.tag) for i, p in enumerate(points))


def _grid(xs: np.ndarray, ys: np.ndarray, zs: np.ndarray, velocity: Vec3 = ZERO, tag: str | None = None) -> list[ScenePoint]:
    return [
        ScenePoint(0, Vec3(float(x), float(y), float(z)), velocity, tag)
        for x in xs for y in ys for z in zs
    ]


def pyramid_scene() -> Scene:
    """Square pyramid, apex toward the camera: 5 vertices plus 20 samples per edge."""
    points = expand_pyramid(Vec3(0.5, 0.3, 8.0), base=2.0, height=2.0, samples_per_edge=20)
    return Scene(tuple(points), _rig(1.0))


def wall_scene() -> Scene:
    """Fronto-parallel wall at s = 20 m, camera speed 2."""
    axis = np.round(np.arange(-5.0, 5.0 + 1e-9, 0.05), 10)
    return Scene(_renumber(_grid(axis, axis, np.array([20.0]), tag="wall")), _rig(2.0))


def pole_scene() -> Scene:
    """Pole parallel to the direction of travel at d = 4 m, camera speed 2."""
    zs = np.round(np.arange(4.0, 60.0 + 1e-9, 0.05), 10)
    return Scene(_renumber(_grid(np.array([4.0]), np.array([0.0]), zs, tag="pole")), _rig(2.0))


def _street_points() -> list[ScenePoint]:
    zs = np.round(np.arange(3.0, 60.0 + 1e-9, 0.25), 10)
    points = _grid(np.round(np.arange(-6.0, 6.0 + 1e-9, 0.25), 10), np.array([-1.5]), zs, tag="ground")
    for side in (-6.0, 6.0):
        points += _grid(np.array([side]), np.round(np.arange(-1.25, 3.0 + 1e-9, 0.25), 10), zs, tag="facade")
    for center in ((-3.5, -0.5, 18.0), (3.0, -0.75, 26.0), (-2.5, -0.25, 40.0)):
        points += expand_box(Vec3(*center), Vec3(1.5, 2.0, 3.0), samples_per_edge=9, tag="block")
    return points


def street_scene() -> Scene:
    """Stationary corridor: ground plane, two facades and three blocks; speed 2."""
    return Scene(_renumber(_street_points()), _rig(2.0))


def street_movers_scene() -> Scene:
    """The street plus five boxes crossing it laterally."""
    points = _street_points()
    crossings = (
        ((-4.0, -0.75, 14.0), (1.5, 0.0, 0.0)),
        ((4.0, -0.75, 22.0), (-1.5, 0.0, 0.0)),
        ((-1.5, 1.5, 30.0), (0.0, -0.5, 0.0)),
        ((2.0, -1.0, 35.0), (1.0, 0.0, 1.0)),
        ((-3.0, -0.5, 45.0), (0.75, 0.0, -0.5)),
    )
    for center, velocity in crossings:
        points += expand_box(Vec3(*center), Vec3(1.0, 1.0, 1.0), samples_per_edge=6, velocity=Vec3(*velocity), tag="mover")
    return Scene(_renumber(points), _rig(2.0))


def mixed_scene(seed: int = 7, n_stationary: int = 200) -> Scene:
    """
    Random stationary cloud plus the five MIXED_MOVERS; speed 1.

    Stationary points stay inside a 90 degree field of view and clear of
    the FOE for t in [0, 3].
    """
    rng = np.random.default_rng(seed)
    points: list[ScenePoint] = []
    while len(points) < n_stationary:
        z = rng.uniform(8.0, 40.0)
        half = 0.5 * (z - 3.0)
        x, y = rng.uniform(-half, half, size=2)
        if np.hypot(x, y) < 0.3:
            continue
        points.append(ScenePoint(len(points), Vec3(float(x), float(y), float(z)), tag="static"))
    for position, velocity in MIXED_MOVERS:
        points.append(ScenePoint(len(points), Vec3(*position), Vec3(*velocity), tag="mover"))
    return Scene(tuple(points), _rig(1.0))


# Laterally moving points of the near cloud; each keeps its image direction
# fixed, so distance from the axis grows linearly over the window.
NEAR_MOVERS = (
    ((0.5, 0.0, 2.5), (3.0, 0.0, 0.0)),
    ((0.0, 0.4, 3.0), (0.0, 2.5, 0.0)),
    ((0.0, -0.6, 2.8), (0.0, -2.0, 0.0)),
    ((0.4, 0.4, 2.6), (1.5, 1.5, 0.0)),
    ((-0.5, 0.3, 2.4), (-1.5, 0.9, 2.0)),
)

NEAR_SPEED = 10.0
NEAR_DT = 0.05
NEAR_FRAMES = 4


def near_mixed_scene(seed: int = 11, n_stationary: int = 200) -> Scene:
    """
    Stationary cloud 2.2 to 3 m ahead plus the five NEAR_MOVERS; speed 10.

    Sampled over NEAR_FRAMES frames NEAR_DT apart, every TTC stays below
    0.3 s and every point stays in frame and at least 0.15 m off the axis.
    Relative rho_dot noise shifts TTC in proportion to TTC itself, so
    short times keep a 0.005 noise level far below eps_abs = 0.01 s.
    """
    travel = NEAR_SPEED * NEAR_DT * (NEAR_FRAMES - 1)
    rng = np.random.default_rng(seed)
    points: list[ScenePoint] = []
    while len(points) < n_stationary:
        z = rng.uniform(2.2, 3.0)
        half = 0.9 * (z - travel)
        x, y = rng.uniform(-half, half, size=2)
        if np.hypot(x, y) < 0.15:
            continue
        points.append(ScenePoint(len(points), Vec3(float(x), float(y), float(z)), tag="static"))
    for position, velocity in NEAR_MOVERS:
        points.append(ScenePoint(len(points), Vec3(*position), Vec3(*velocity), tag="mover"))
    return Scene(tuple(points), _rig(NEAR_SPEED))
