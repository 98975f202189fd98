"""Single-antenna secrecy SWIPT with artificial noise.

The H-AP sends ``sqrt(P(1-alpha)) s0 + sqrt(P alpha) s1`` where ``s0`` is
the confidential message and ``s1`` the energy signal that doubles as AN.
A Type-I information receiver knows the AN and subtracts it; a Type-II
receiver does not.

Every rate function broadcasts over numpy arrays, which the optimizers
use to evaluate whole alpha grids at once.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .optim import grid_points, maximize_scalar

LN2 = math.log(2.0)


class ReceiverType(str, enum.Enum):
    TYPE_I = "type-I"    # cancels the AN before decoding
    TYPE_II = "type-II"  # treats the AN as noise


@dataclass(frozen=True)
class SystemParams:
    """Transmit power ``power`` (W), conversion efficiency ``eta``,
    receiver noise power ``noise`` (W) and AN power split ``alpha``."""

    power: float
    noise: float
    eta: float = 0.5
    alpha: float = 0.0

    def __post_init__(self):
        if not self.power > 0:
            raise ValueError(f"power must be > 0 W, got {self.power}")
        if not self.noise > 0:
            raise ValueError(f"noise must be > 0 W, got {self.noise}")
        if not 0 < self.eta <= 1:
            raise ValueError(f"eta must lie in (0, 1], got {self.eta}")
        if not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    def with_alpha(self, alpha: float) -> "SystemParams":
        return replace(self, alpha=alpha)


def _in_sinr(power, noise, alpha, h_info, rx):
    signal = power * (1 - alpha) * h_info
    if ReceiverType(rx) is ReceiverType.TYPE_I:
        return signal / noise
    return signal / (power * alpha * h_info + noise)


def _eve_sinr(power, noise, alpha, h_eve):
    return power * (1 - alpha) * h_eve / (power * alpha * h_eve + noise)


def sinr_in(params: SystemParams, h_info, rx=ReceiverType.TYPE_I):
    """SINR at the information node for channel power gain ``h_info``."""
    return _in_sinr(params.power, params.noise, params.alpha, h_info, rx)


def sinr_eve(params: SystemParams, h_eve):
    """SINR at the energy receiver acting as eavesdropper."""
    return _eve_sinr(params.power, params.noise, params.alpha, h_eve)


def secrecy_rate(sinr_legit, sinr_eve):
    """``[log2(1 + sinr_legit) - log2(1 + sinr_eve)]^+`` in bits/s/Hz."""
    diff = (np.log1p(sinr_legit) - np.log1p(sinr_eve)) / LN2
    out = np.maximum(diff, 0.0)
    return float(out) if np.ndim(out) == 0 else out


def harvested_power(params: SystemParams, h_eve) -> float:
    """``eta * P * h_E``; the information and AN parts carry the same total power."""
    return params.eta * params.power * h_eve


class AlphaResult(NamedTuple):
    alpha: float
    rate: float


def siso_rate_curve(params: SystemParams, h_info, h_eve, rx, alphas):
    """Secrecy rate at each alpha in ``alphas`` (array in, array out)."""
    alphas = np.asarray(alphas, dtype=float)
    return secrecy_rate(_in_sinr(params.power, params.noise, alphas, h_info, rx),
                        _eve_sinr(params.power, params.noise, alphas, h_eve))


def optimize_alpha(params: SystemParams, h_info, h_eve, rx=ReceiverType.TYPE_I,
                   coarse_step: float = 1e-3, plateau_step: float = 1e-4,
                   tol: float = 1e-7) -> AlphaResult:
    """Best power split for the secrecy rate, searched over ``0 <= alpha <= 1``.

    ``params.alpha`` is ignored. Objectives with a zero plateau somewhere
    on the coarse grid are searched on the finer ``plateau_step`` grid
    before refinement. An all-zero objective yields ``alpha = 0``.
    """
    def curve(a):
        return siso_rate_curve(params, h_info, h_eve, rx, a)

    coarse = curve(grid_points(0.0, 1.0, coarse_step))
    if coarse.max() == 0.0 and curve(grid_points(0.0, 1.0, plateau_step)).max() == 0.0:
        return AlphaResult(0.0, 0.0)
    step = plateau_step if np.any(coarse == 0.0) else coarse_step
    best = maximize_scalar(curve, (0.0, 1.0), coarse_step=step, tol=tol, vectorized=True)
    return AlphaResult(best.argmax, best.value)
