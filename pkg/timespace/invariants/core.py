"""
Time-Clearance and Time-to-Contact from radial optical flow.

Nothing in this module receives the camera speed: every quantity is
computed from (rho, rho_dot, theta) and the focal length alone.

    alpha        = arctan(rho / f)
    alpha_dot    = rho_dot * f / (f^2 + rho^2)
    Time-Clearance = sin^2(alpha) / alpha_dot      (= d / |t| when stationary)
    TTC            = sin(2 alpha) / (2 alpha_dot)  (= s / |t| when stationary)
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from timespace.errors import DegenerateFlow, OnAxis
from timespace.flow.projection import FlowSample

EPS_MIN = 1e-12


class InvariantStatus(str, Enum):
    OK = "ok"
    ON_AXIS = "on_axis"
    DEGENERATE = "degenerate"


STATUS_CODES = {InvariantStatus.OK: 0, InvariantStatus.ON_AXIS: 1, InvariantStatus.DEGENERATE: 2}


@dataclass(frozen=True)
class InvariantPoint:
    """A point in the invariant domain: (TTC, Time-Clearance, theta) at time t."""
    ttc: float
    tc: float
    theta: float
    t: float
    point_id: int


@dataclass(frozen=True)
class EmbeddedPoint:
    """Cartesian embedding of an InvariantPoint, in seconds."""
    ex: float
    ey: float
    ez: float


def alpha_from_rho(rho: float, focal: float) -> float:
    return math.atan(rho / focal)


def alpha_dot_from_flow(rho: float, rho_dot: float, focal: float) -> float:
    return rho_dot * focal / (focal * focal + rho * rho)


def _check(alpha: float, alpha_dot: float, eps_min: float) -> None:
    if alpha == 0.0:
        raise OnAxis("alpha is 0: the point is at the FOE")
    if abs(alpha_dot) <= eps_min:
        raise DegenerateFlow(f"|alpha_dot| = {abs(alpha_dot):.3g} <= {eps_min:.3g}")


def time_clearance(alpha: float, alpha_dot: float, eps_min: float = EPS_MIN) -> float:
    """
    sin^2(alpha) / alpha_dot.

    Raises:
        OnAxis: alpha == 0
        DegenerateFlow: |alpha_dot| <= eps_min
    """
    _check(alpha, alpha_dot, eps_min)
    return math.sin(alpha) ** 2 / alpha_dot


def time_to_contact(alpha: float, alpha_dot: float, eps_min: float = EPS_MIN) -> float:
    """
    sin(2 alpha) / (2 alpha_dot).

    Raises:
        OnAxis: alpha == 0
        DegenerateFlow: |alpha_dot| <= eps_min
    """
    _check(alpha, alpha_dot, eps_min)
    return math.sin(2.0 * alpha) / (2.0 * alpha_dot)


def to_invariant_domain(fs: FlowSample, focal: float, eps_min: float = EPS_MIN) -> InvariantPoint:
    """Map one flow sample to its invariant-domain coordinates."""
    alpha = alpha_from_rho(fs.rho, focal)
    alpha_dot = alpha_dot_from_flow(fs.rho, fs.rho_dot, focal)
    return InvariantPoint(
        ttc=time_to_contact(alpha, alpha_dot, eps_min),
        tc=time_clearance(alpha, alpha_dot, eps_min),
        theta=fs.theta,
        t=fs.t,
        point_id=fs.point_id,
    )


def try_invariant_domain(
    fs: FlowSample, focal: float, eps_min: float = EPS_MIN
) -> tuple[InvariantPoint | None, InvariantStatus]:
    """Like to_invariant_domain but reports masking as a status instead of raising."""
    try:
        return to_invariant_domain(fs, focal, eps_min), InvariantStatus.OK
    except OnAxis:
        return None, InvariantStatus.ON_AXIS
    except DegenerateFlow:
        return None, InvariantStatus.DEGENERATE


def embed(ip: InvariantPoint) -> EmbeddedPoint:
    """(tc cos theta, tc sin theta, ttc): for a stationary scene this is the scene scaled by 1/|t|."""
    return EmbeddedPoint(ip.tc * math.cos(ip.theta), ip.tc * math.sin(ip.theta), ip.ttc)


def invariant_arrays(
    rho: np.ndarray, rho_dot: np.ndarray, focal: float, eps_min: float = EPS_MIN
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorized to_invariant_domain.

    Returns (ttc, tc, status) where status holds STATUS_CODES values and
    ttc/tc are NaN wherever status is not OK.
    """
    rho = np.asarray(rho, dtype=np.float64)
    rho_dot = np.asarray(rho_dot, dtype=np.float64)
    alpha = np.arctan(rho / focal)
    alpha_dot = rho_dot * focal / (focal * focal + rho * rho)

    status = np.full(rho.shape, STATUS_CODES[InvariantStatus.OK], dtype=np.int8)
    degenerate = ~(np.abs(alpha_dot) > eps_min)
    on_axis = alpha == 0.0
    status[degenerate] = STATUS_CODES[InvariantStatus.DEGENERATE]
    status[on_axis] = STATUS_CODES[InvariantStatus.ON_AXIS]

    ok = status == STATUS_CODES[InvariantStatus.OK]
    safe_rate = np.where(ok, alpha_dot, 1.0)
    ttc = np.where(ok, np.sin(2.0 * alpha) / (2.0 * safe_rate), np.nan)
    tc = np.where(ok, np.sin(alpha) ** 2 / safe_rate, np.nan)
    return ttc, tc, status
