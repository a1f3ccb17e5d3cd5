import pytest

from _helpers import point
from timespace.geometry.types import CameraRig, Scene


@pytest.fixture
def unit_rig():
    return CameraRig(speed=1.0, focal=1.0, width=64, height=64)


@pytest.fixture
def rig_512():
    return CameraRig(speed=1.0, focal=256.0, width=512, height=512)


@pytest.fixture
def lateral_mover():
    """(2,0,5) drifting at (-0.2,0,0): tc goes 4.0 -> 3.24 between t=0 and t=1."""
    return point(7, 2.0, 0.0, 5.0, vx=-0.2)


@pytest.fixture
def small_scene(rig_512):
    points = (
        point(0, 1.0, 0.5, 5.0),
        point(1, -2.0, 1.0, 9.0),
        point(2, 0.5, -1.5, 7.0, tag="marker"),
        point(3, 2.0, 0.0, 5.0, vx=-0.2),
    )
    return Scene(points, rig_512)
