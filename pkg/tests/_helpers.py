"""Shared builders for the test suite."""

from timespace.flow.projection import analytic_flow
from timespace.geometry.types import ScenePoint, Vec3
from timespace.invariants.core import to_invariant_domain

MINIMAL_SCENE = "camera speed=1 focal=100 width=64 height=64\npoint 1 0 1\n"


def point(pid, x, y, z, vx=0.0, vy=0.0, vz=0.0, tag=None):
    return ScenePoint(pid, Vec3(x, y, z), Vec3(vx, vy, vz), tag)


def invariant_track(p, rig, times):
    """Analytic invariant samples of one point at the given times."""
    return [to_invariant_domain(analytic_flow(p, rig, t), rig.focal) for t in times]
