"""Multi-antenna secrecy SWIPT: heuristic beam designs and rate-energy regions."""
from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

from .beamforming import BeamPair, DimensionError, coupling_power, mrt_beam, zf_beam
from .optim import RateEnergyPoint, pareto_front
from .swipt_siso import ReceiverType, SystemParams, secrecy_rate

DEFAULT_ALPHA_POINTS = 201


class BeamStrategy(str, enum.Enum):
    AN_TYPE_I = "an-type-I"
    AN_TYPE_II = "an-type-II"
    NO_AN_TIME_SHARING = "no-an-time-sharing"


class TimeSharingCorners(NamedTuple):
    """Two operating points of the no-AN baseline.

    ``secrecy``: information beam nulled at the ER, nothing harvested.
    ``energy``: all power beamed to the ER, no information sent.
    """

    secrecy: BeamPair
    energy: BeamPair


def _couplings(h, beams):
    h = np.atleast_1d(np.asarray(h, dtype=complex))
    g_info = 0.0 if beams.w_info is None else coupling_power(h, beams.w_info)
    g_energy = 0.0 if beams.w_energy is None else coupling_power(h, beams.w_energy)
    return g_info, g_energy


def miso_sinrs(params: SystemParams, h_info, h_eve, beams: BeamPair,
               rx=ReceiverType.TYPE_I) -> tuple[float, float]:
    """(IN SINR, ER SINR) for the given beams and ``params.alpha``."""
    if np.shape(h_info) != np.shape(h_eve):
        raise DimensionError(f"channel shapes differ: {np.shape(h_info)} vs {np.shape(h_eve)}")
    P, a, s2 = params.power, params.alpha, params.noise
    ii, ie = _couplings(h_info, beams)
    ei, ee = _couplings(h_eve, beams)
    if ReceiverType(rx) is ReceiverType.TYPE_I:
        sinr_i = P * (1 - a) * ii / s2
    else:
        sinr_i = P * (1 - a) * ii / (P * a * ie + s2)
    sinr_e = P * (1 - a) * ei / (P * a * ee + s2)
    return sinr_i, sinr_e


def design_beams(h_info, h_eve, strategy: BeamStrategy):
    """Beam pair for an AN strategy, or the two corners of the no-AN baseline.

    AN with Type-I IN: MRT to both nodes. AN with Type-II IN: MRT to the IN,
    energy beam zero-forced away from the IN. No AN: information zero-forced
    away from the ER, time-shared with pure MRT energy transfer.
    """
    strategy = BeamStrategy(strategy)
    if strategy is BeamStrategy.AN_TYPE_I:
        return BeamPair(mrt_beam(h_info), mrt_beam(h_eve))
    if strategy is BeamStrategy.AN_TYPE_II:
        return BeamPair(mrt_beam(h_info), zf_beam(target=h_eve, avoid=h_info))
    return TimeSharingCorners(
        secrecy=BeamPair(zf_beam(target=h_info, avoid=h_eve), None),
        energy=BeamPair(None, mrt_beam(h_eve)),
    )


def rate_energy_point(params: SystemParams, h_info, h_eve, beams: BeamPair,
                      rx=ReceiverType.TYPE_I) -> RateEnergyPoint:
    sinr_i, sinr_e = miso_sinrs(params, h_info, h_eve, beams, rx)
    ei, ee = _couplings(h_eve, beams)
    P, a = params.power, params.alpha
    energy = params.eta * (P * (1 - a) * ei + P * a * ee)
    return RateEnergyPoint(secrecy_rate(sinr_i, sinr_e), energy)


def corner_points(params: SystemParams, h_info, h_eve) -> tuple[RateEnergyPoint, RateEnergyPoint]:
    """(secrecy corner, energy corner) of the no-AN baseline at full power."""
    corners = design_beams(h_info, h_eve, BeamStrategy.NO_AN_TIME_SHARING)
    secrecy = rate_energy_point(params.with_alpha(0.0), h_info, h_eve, corners.secrecy)
    energy = rate_energy_point(params.with_alpha(1.0), h_info, h_eve, corners.energy)
    return secrecy, energy


def default_alpha_grid(n: int = DEFAULT_ALPHA_POINTS) -> np.ndarray:
    return np.linspace(0.0, 1.0, n)


def rate_energy_region(params: SystemParams, h_info, h_eve, strategy: BeamStrategy,
                       rx=ReceiverType.TYPE_I, alphas=None) -> list[RateEnergyPoint]:
    """Achievable (secrecy rate, harvested power) boundary for one strategy.

    For AN strategies ``alphas`` is the power-split sweep and the result is
    Pareto-filtered. For the no-AN baseline the same grid is read as the
    time fraction spent in the secrecy corner and the linear time-sharing
    segment is returned. Both are sorted by harvested power.
    """
    alphas = default_alpha_grid() if alphas is None else np.asarray(alphas, dtype=float)
    if np.any((alphas < 0) | (alphas > 1)):
        raise ValueError("alpha grid must lie within [0, 1]")
    strategy = BeamStrategy(strategy)
    if strategy is BeamStrategy.NO_AN_TIME_SHARING:
        sec, eng = corner_points(params, h_info, h_eve)
        seg = [RateEnergyPoint(t * sec.rate + (1 - t) * eng.rate,
                               t * sec.energy + (1 - t) * eng.energy) for t in alphas]
        return sorted(seg, key=lambda p: (p.energy, p.rate))
    beams = design_beams(h_info, h_eve, strategy)
    pts = [rate_energy_point(params.with_alpha(float(a)), h_info, h_eve, beams, rx)
           for a in np.sort(alphas)]
    return pareto_front(pts)
