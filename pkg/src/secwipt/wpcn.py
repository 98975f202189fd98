"""Secrecy WPCN: harvest-then-transmit uplink with wireless-powered jamming.

A frame of unit length is split into a downlink energy slot ``tau`` and an
uplink slot ``1 - tau``. The IN and the helping nodes (HNs) spend all the
energy they harvested during the downlink uniformly over the uplink slot.
HNs share one AN key with the H-AP, which therefore removes their jamming
completely. Channels are reciprocal, so one gain serves both directions.

The three-slot variant adds a relaying slot: the HN harvests in slot 1,
decodes the IN in slot 2, and splits its power between forwarding and
jamming in slot 3.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .optim import grid_points
from .swipt_siso import LN2, SystemParams

SIMPLEX_TOL = 1e-12
DEFAULT_TAU_POINTS = 999


class WpcnDomainError(ValueError):
    pass


class JammingMode(str, enum.Enum):
    OFF = "off"
    INCOHERENT = "incoherent"
    COHERENT = "coherent"


@dataclass(frozen=True)
class WpcnTopology:
    g_ap_in: float
    g_ap_hn: float
    g_in_er: float
    g_hn_er: tuple = ()
    g_hn_ap: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "g_hn_er", tuple(float(g) for g in self.g_hn_er))
        object.__setattr__(self, "g_hn_ap", tuple(float(g) for g in self.g_hn_ap)
                           or tuple(self.g_ap_hn for _ in self.g_hn_er))
        if len(self.g_hn_er) != len(self.g_hn_ap):
            raise WpcnDomainError("g_hn_er and g_hn_ap need one entry per HN")
        for name in ("g_ap_in", "g_ap_hn", "g_in_er"):
            if not getattr(self, name) >= 0:
                raise WpcnDomainError(f"{name} must be >= 0")
        if any(not g >= 0 for g in self.g_hn_er + self.g_hn_ap):
            raise WpcnDomainError("HN gains must be >= 0")


@dataclass(frozen=True)
class WpcnSchedule:
    tau: float
    jamming: JammingMode = JammingMode.OFF

    def __post_init__(self):
        object.__setattr__(self, "jamming", JammingMode(self.jamming))
        _check_tau(self.tau)


@dataclass(frozen=True)
class ThreeSlotTopology:
    g_ap_in: float
    g_ap_hn: float
    g_in_hn: float
    g_in_er: float
    g_hn_er: float
    g_hn_ap: float


@dataclass(frozen=True)
class ThreeSlotSchedule:
    tau1: float  # downlink energy transfer
    tau2: float  # IN -> HN
    tau3: float  # HN -> H-AP forwarding plus jamming
    beta_hn: float = 0.0

    def __post_init__(self):
        taus = (self.tau1, self.tau2, self.tau3)
        if any(not t > 0 for t in taus):
            raise WpcnDomainError(f"slot fractions must be > 0, got {taus}")
        if abs(sum(taus) - 1.0) > SIMPLEX_TOL:
            raise WpcnDomainError(f"slot fractions must sum to 1, got {sum(taus)!r}")
        if not 0 <= self.beta_hn <= 1:
            raise WpcnDomainError(f"beta_hn must lie in [0, 1], got {self.beta_hn}")


def _check_tau(tau):
    t = np.asarray(tau, dtype=float)
    if np.any((t <= 0) | (t >= 1)):
        raise WpcnDomainError(f"tau must lie in the open interval (0, 1), got {tau}")
    return t


def in_uplink_power(tau, params: SystemParams, g_ap_in):
    """IN transmit power in the uplink slot (W)."""
    t = _check_tau(tau)
    return params.eta * params.power * g_ap_in * t / (1 - t)


def jamming_power_at(tau, params: SystemParams, g_ap_hn, g_hn_er, mode=JammingMode.COHERENT):
    """Aggregate HN jamming power received at the ER (W).

    Coherent jamming phase-aligns the HNs so amplitudes add at the ER.
    """
    t = _check_tau(tau)
    mode = JammingMode(mode)
    gains = np.asarray(g_hn_er, dtype=float)
    if mode is JammingMode.OFF or gains.size == 0:
        return np.zeros_like(t) if np.ndim(t) else 0.0
    per_hn = params.eta * params.power * g_ap_hn * t / (1 - t)
    if mode is JammingMode.INCOHERENT:
        return per_hn * gains.sum()
    # (sum sqrt g)^2 expanded so identical HNs give exactly K^2 g
    cross = np.sqrt(np.outer(gains, gains))[np.triu_indices(gains.size, 1)]
    return per_hn * (gains.sum() + 2 * cross.sum())


def _uplink_rate(tau, params, topo, mode):
    p_in = in_uplink_power(tau, params, topo.g_ap_in)
    jam = jamming_power_at(tau, params, topo.g_ap_hn, topo.g_hn_er, mode)
    snr_ap = p_in * topo.g_ap_in / params.noise
    sinr_er = p_in * topo.g_in_er / (jam + params.noise)
    return (1 - tau) * np.maximum((np.log1p(snr_ap) - np.log1p(sinr_er)) / LN2, 0.0)


def uplink_secrecy_rate(schedule: WpcnSchedule, params: SystemParams, topo: WpcnTopology) -> float:
    """Frame-averaged uplink secrecy rate (bits/s/Hz)."""
    return float(_uplink_rate(schedule.tau, params, topo, schedule.jamming))


def uplink_rate_curve(taus, params: SystemParams, topo: WpcnTopology, mode):
    return _uplink_rate(np.asarray(taus, dtype=float), params, topo, JammingMode(mode))


def default_tau_grid(n: int = DEFAULT_TAU_POINTS) -> np.ndarray:
    return np.arange(1, n + 1) / (n + 1)


class TauResult(NamedTuple):
    tau: float
    rate: float


def optimize_tau(params: SystemParams, topo: WpcnTopology, mode=JammingMode.COHERENT,
                 taus=None) -> TauResult:
    """Pure grid search over the energy-slot fraction; ties go to the smaller tau."""
    taus = default_tau_grid() if taus is None else np.sort(np.asarray(taus, dtype=float))
    rates = uplink_rate_curve(taus, params, topo, mode)
    k = int(np.argmax(rates))
    return TauResult(float(taus[k]), float(rates[k]))


class NearFarReport(NamedTuple):
    near: TauResult
    far: TauResult


def doubly_near_far_report(params: SystemParams, topo_near: WpcnTopology,
                           topo_far: WpcnTopology, mode=JammingMode.COHERENT,
                           taus=None) -> NearFarReport:
    if topo_far.g_ap_in > topo_near.g_ap_in:
        raise WpcnDomainError("the far IN must not have a larger H-AP gain than the near IN")
    return NearFarReport(optimize_tau(params, topo_near, mode, taus),
                         optimize_tau(params, topo_far, mode, taus))


def _three_slot_rate(t1, t2, t3, beta, params, topo):
    s2 = params.noise
    energy_hn = params.eta * params.power * topo.g_ap_hn * t1
    p_in = params.eta * params.power * topo.g_ap_in * t1 / t2
    p_hn = energy_hn / t3
    snr_hn = p_in * topo.g_in_hn / s2
    sinr_e2 = p_in * topo.g_in_er / s2
    snr_fwd = (1 - beta) * p_hn * topo.g_hn_ap / s2
    sinr_e3 = (1 - beta) * p_hn * topo.g_hn_er / (beta * p_hn * topo.g_hn_er + s2)
    legit = np.minimum(t2 * np.log1p(snr_hn), t3 * np.log1p(snr_fwd))
    leak = t2 * np.log1p(sinr_e2) + t3 * np.log1p(sinr_e3)
    return np.maximum((legit - leak) / LN2, 0.0)


def three_slot_relay_secrecy_rate(s: ThreeSlotSchedule, params: SystemParams,
                                  topo: ThreeSlotTopology) -> float:
    """Secrecy rate of the harvest / transmit / relay-and-jam frame (bits/s/Hz).

    The HN decodes and forwards. The ER overhears slot 2 unjammed and
    slot 3 under the HN's jamming; the leakage of both slots is summed.
    """
    return float(_three_slot_rate(s.tau1, s.tau2, s.tau3, s.beta_hn, params, topo))


class ThreeSlotResult(NamedTuple):
    schedule: ThreeSlotSchedule
    rate: float


def optimize_three_slot(params: SystemParams, topo: ThreeSlotTopology, step: float = 0.01,
                        beta_step: float = 0.01, tau1: float | None = None) -> ThreeSlotResult:
    """Exhaustive search over the interior of the slot simplex and ``beta_hn``.

    Ties go to the lexicographically smaller ``(tau1, tau2, beta_hn)``.
    Passing ``tau1`` fixes the energy slot and searches the rest.
    """
    n = int(round(1.0 / step))
    if tau1 is None:
        k, m = np.array([(k, m) for k in range(1, n) for m in range(1, n - k)]).T
        t1, t2 = k / n, m / n
    else:
        if not 0 < tau1 < 1:
            raise WpcnDomainError(f"tau1 must lie in (0, 1), got {tau1}")
        t2 = np.arange(1, n) / n * (1 - tau1)
        t1 = np.full_like(t2, tau1)
    t3 = 1.0 - t1 - t2
    keep = t3 > 0
    t1, t2, t3 = t1[keep], t2[keep], t3[keep]
    betas = grid_points(0.0, 1.0, beta_step)
    rates = _three_slot_rate(t1[:, None], t2[:, None], t3[:, None], betas[None, :], params, topo)
    i, j = np.unravel_index(int(np.argmax(rates)), rates.shape)
    tau3 = 1.0 - float(t1[i]) - float(t2[i])
    best = ThreeSlotSchedule(float(t1[i]), float(t2[i]), tau3, float(betas[j]))
    return ThreeSlotResult(best, float(rates[i, j]))
