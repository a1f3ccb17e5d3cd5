"""
timespace - motion invariants of a camera translating along its optical axis.

Simulates scenes and flow, maps flow to Time-Clearance and Time-to-Contact,
detects moving points by constancy violation and renders invariant maps.
"""

__version__ = "0.1.0"
