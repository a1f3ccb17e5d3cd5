"""Deterministic, sample-keyed multiplicative noise on rho_dot."""

import dataclasses

import numpy as np

from timespace.errors import ValidationError
from timespace.flow.projection import FlowQuality, FlowSample

TIME_QUANTUM = 1e-9


def _fold(n: int) -> int:
    # SeedSequence entropy must be non-negative
    return 2 * n if n >= 0 else -2 * n - 1


def sample_key(seed: int, point_id: int, t: float) -> np.random.SeedSequence:
    """Seed sequence for one sample, independent of evaluation order."""
    quantized_t = int(round(t / TIME_QUANTUM))
    return np.random.SeedSequence([_fold(int(seed)), _fold(int(point_id)), _fold(quantized_t)])


def standard_normal(seed: int, point_id: int, t: float) -> float:
    return float(np.random.default_rng(sample_key(seed, point_id, t)).standard_normal())


def add_flow_noise(sample: FlowSample, sigma_rho_dot: float, seed: int) -> FlowSample:
    """
    Perturb rho_dot by N(0, (sigma_rho_dot * |rho_dot|)^2).

    rho and theta are left exact. sigma_rho_dot == 0 returns the input.
    """
    if sigma_rho_dot < 0:
        raise ValidationError(f"sigma_rho_dot must be >= 0, got {sigma_rho_dot}")
    if sigma_rho_dot == 0:
        return sample
    z = standard_normal(seed, sample.point_id, sample.t)
    rho_dot = sample.rho_dot + sigma_rho_dot * abs(sample.rho_dot) * z
    return dataclasses.replace(sample, rho_dot=rho_dot, quality=FlowQuality.NOISY)


def add_flow_noise_arrays(
    rho_dot: np.ndarray,
    point_ids: np.ndarray,
    t: np.ndarray | float,
    sigma_rho_dot: float,
    seed: int,
) -> np.ndarray:
    """Array form of add_flow_noise; element i is keyed on (seed, point_ids[i], t[i])."""
    if sigma_rho_dot < 0:
        raise ValidationError(f"sigma_rho_dot must be >= 0, got {sigma_rho_dot}")
    rho_dot = np.asarray(rho_dot, dtype=np.float64)
    if sigma_rho_dot == 0:
        return rho_dot.copy()
    ts = np.broadcast_to(np.asarray(t, dtype=np.float64), rho_dot.shape)
    z = np.array(
        [standard_normal(seed, int(pid), float(ti)) for pid, ti in zip(point_ids, ts)],
        dtype=np.float64,
    )
    return rho_dot + sigma_rho_dot * np.abs(rho_dot) * z
