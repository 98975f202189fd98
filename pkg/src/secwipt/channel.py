"""Geometry-based channel generation and unit conversions.

Channels are plain complex numpy arrays of shape ``(N,)``. A single-antenna
link is the ``N == 1`` case; its power gain is ``|h[0]|**2``.

Random draws use numpy's PCG64 generator seeded with an explicit 64-bit
integer, so a given seed reproduces the same vector bit-for-bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ChannelDomainError(ValueError):
    """Raised when a channel operation receives an out-of-domain argument."""


@dataclass(frozen=True)
class NodePlacement:
    """Position of a node relative to the transmitter array.

    ``angle_deg`` is the azimuth from array broadside; it is normalized
    to ``[0, 360)`` on construction.
    """

    distance: float
    angle_deg: float = 0.0

    def __post_init__(self):
        if not self.distance > 0:
            raise ChannelDomainError(f"distance must be > 0, got {self.distance}")
        object.__setattr__(self, "angle_deg", float(self.angle_deg) % 360.0)


@dataclass(frozen=True)
class PathLossModel:
    exponent: float = 3.0
    reference_gain: float = 1.0  # linear gain at 1 m

    def __post_init__(self):
        if self.exponent < 0:
            raise ChannelDomainError(f"path-loss exponent must be >= 0, got {self.exponent}")
        if not self.reference_gain > 0:
            raise ChannelDomainError(
                f"reference_gain must be > 0, got {self.reference_gain}")


def path_loss_gain(d, model=PathLossModel()):
    """Linear power gain ``reference_gain * d**(-exponent)`` at distance ``d`` (m)."""
    if not d > 0:
        raise ChannelDomainError(f"distance must be > 0, got {d}")
    return model.reference_gain * float(d) ** (-model.exponent)


def steering_vector(n_antennas, angle_deg):
    """Unit-norm ULA response with half-wavelength spacing.

    Element ``n`` has phase ``pi * n * sin(angle)``.
    """
    if n_antennas < 1:
        raise ChannelDomainError(f"antenna count must be >= 1, got {n_antennas}")
    n = np.arange(n_antennas)
    phase = math.pi * n * math.sin(math.radians(angle_deg))
    return np.exp(1j * phase) / math.sqrt(n_antennas)


def los_channel(placement: NodePlacement, n_antennas: int = 1,
                model: PathLossModel = PathLossModel()) -> np.ndarray:
    """Line-of-sight channel whose squared norm equals the path-loss gain."""
    gain = path_loss_gain(placement.distance, model)
    return math.sqrt(gain) * steering_vector(n_antennas, placement.angle_deg)


def rayleigh_channel(seed: int, n_antennas: int = 1, avg_gain: float = 1.0) -> np.ndarray:
    """i.i.d. circularly-symmetric complex Gaussian channel, ``E|h_n|^2 = avg_gain``."""
    if not avg_gain > 0:
        raise ChannelDomainError(f"avg_gain must be > 0, got {avg_gain}")
    if n_antennas < 1:
        raise ChannelDomainError(f"antenna count must be >= 1, got {n_antennas}")
    rng = np.random.Generator(np.random.PCG64(seed))
    scale = math.sqrt(avg_gain / 2.0)
    return scale * (rng.standard_normal(n_antennas) + 1j * rng.standard_normal(n_antennas))


def power_gain(h) -> float:
    """Squared Euclidean norm of a channel vector (or ``|h|^2`` for a scalar)."""
    h = np.atleast_1d(np.asarray(h))
    return float(np.vdot(h, h).real)


def dbm_to_watts(x):
    return 10.0 ** ((np.asarray(x, dtype=float) - 30.0) / 10.0) if np.ndim(x) \
        else 10.0 ** ((float(x) - 30.0) / 10.0)


def watts_to_dbm(x):
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise ChannelDomainError(f"power must be > 0 W to convert to dBm, got {x}")
    out = 10.0 * np.log10(arr) + 30.0
    return out if np.ndim(x) else float(out)
