"""Speed-free motion invariants."""

from timespace.invariants.core import (
    EPS_MIN,
    STATUS_CODES,
    EmbeddedPoint,
    InvariantPoint,
    InvariantStatus,
    alpha_dot_from_flow,
    alpha_from_rho,
    embed,
    invariant_arrays,
    time_clearance,
    time_to_contact,
    to_invariant_domain,
    try_invariant_domain,
)

__all__ = [
    "EPS_MIN",
    "STATUS_CODES",
    "EmbeddedPoint",
    "InvariantPoint",
    "InvariantStatus",
    "alpha_dot_from_flow",
    "alpha_from_rho",
    "embed",
    "invariant_arrays",
    "time_clearance",
    "time_to_contact",
    "to_invariant_domain",
    "try_invariant_domain",
]
