"""World-model types: vectors, scene points, the camera rig and ground truth."""

import math
from dataclasses import dataclass, field

from timespace.errors import NonpositiveFocal, NonpositiveSpeed, ValidationError


@dataclass(frozen=True)
class Vec3:
    """A 3-vector in meters (or meters/second when used as a velocity)."""
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise ValidationError(f"Vec3 components must be finite, got {self.as_tuple()}")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: float) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def is_zero(self) -> bool:
        return self.x == 0.0 and self.y == 0.0 and self.z == 0.0


ZERO = Vec3(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ScenePoint:
    """
    A world point with an optional constant world velocity.

    position0 is the position at t=0, with the camera at the origin
    looking down +z.
    """
    id: int
    position0: Vec3
    velocity: Vec3 = ZERO
    tag: str | None = None

    @property
    def stationary(self) -> bool:
        return self.velocity.is_zero()


@dataclass(frozen=True)
class CameraRig:
    """
    Rectilinear camera translating along its optical axis.

    The principal point sits at the image center and coincides with the
    FOE. Speed is ground truth for simulation only; measurement-side code
    never receives a CameraRig.
    """
    speed: float
    focal: float
    width: int
    height: int

    def __post_init__(self):
        if not self.speed > 0:
            raise NonpositiveSpeed(f"camera speed must be > 0, got {self.speed}")
        if not self.focal > 0:
            raise NonpositiveFocal(f"camera focal must be > 0, got {self.focal}")
        for name in ("speed", "focal"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"camera {name} must be finite, got {getattr(self, name)}")
        if self.width <= 0 or self.height <= 0:
            raise ValidationError(f"image size must be positive, got {self.width}x{self.height}")

    def position(self, t: float) -> Vec3:
        return Vec3(0.0, 0.0, self.speed * t)


@dataclass(frozen=True)
class GroundTruthGeometry:
    """Exact cylinder coordinates of a point relative to the moving camera."""
    d: float
    s: float
    r: float
    alpha: float
    alpha_dot: float
    theta: float
    on_axis: bool = False


@dataclass(frozen=True)
class Scene:
    """A non-empty set of uniquely identified points and the rig observing them."""
    points: tuple[ScenePoint, ...]
    rig: CameraRig
    _by_id: dict[int, ScenePoint] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        if not points:
            raise ValidationError("scene has no points")
        by_id: dict[int, ScenePoint] = {}
        for p in points:
            if p.id in by_id:
                raise ValidationError(f"duplicate point id {p.id}")
            by_id[p.id] = p
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.points)

    def get(self, point_id: int) -> ScenePoint:
        return self._by_id[point_id]

    def moving_ids(self) -> set[int]:
        return {p.id for p in self.points if not p.stationary}
