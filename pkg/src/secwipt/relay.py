"""Two-slot wireless-powered cooperative relaying and jamming.

Slot 1: the H-AP transmits (information share ``1 - alpha``, AN share
``alpha``). The helping node (HN) routes a fraction ``gamma`` of its
received power to the harvester and ``1 - gamma`` to the information
receiver. Slot 2: the HN spends the harvested energy, a fraction ``beta``
on jamming the ER and ``1 - beta`` on forwarding to the IN. The ER only
overhears slot 2, and the direct H-AP -> IN path is not combined.

Both slots have equal length, hence the 1/2 in front of every rate.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .optim import grid_points
from .swipt_siso import LN2, ReceiverType, SystemParams


class RelayProtocol(str, enum.Enum):
    AF = "AF"
    DF = "DF"
    NONE = "none"


class OperationMode(str, enum.Enum):
    HARVEST_THEN_JAM = "harvest-then-jam"
    HARVEST_THEN_RELAY = "harvest-then-relay"
    HARVEST_THEN_RELAY_AND_JAM = "harvest-then-relay-and-jam"


class ScheduleError(ValueError):
    pass


class ModeClassificationError(ScheduleError):
    pass


@dataclass(frozen=True)
class HelperSchedule:
    gamma: float  # receive split to harvesting
    beta: float   # transmit split to jamming
    protocol: RelayProtocol = RelayProtocol.DF

    def __post_init__(self):
        object.__setattr__(self, "protocol", RelayProtocol(self.protocol))
        if not 0 <= self.gamma <= 1:
            raise ScheduleError(f"gamma must lie in [0, 1], got {self.gamma}")
        if not 0 <= self.beta <= 1:
            raise ScheduleError(f"beta must lie in [0, 1], got {self.beta}")
        if self.protocol is RelayProtocol.NONE and self.beta != 1:
            raise ScheduleError("a helper that does not relay must jam with beta = 1")

    @property
    def mode(self) -> OperationMode:
        return classify_mode(self)


@dataclass(frozen=True)
class RelayTopology:
    """Channel power gains between H-AP (ap), helper (hn), IN and ER."""

    g_ap_hn: float
    g_hn_in: float
    g_hn_er: float
    g_ap_in: float = 0.0
    g_ap_er: float = 0.0

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value >= 0:
                raise ValueError(f"{name} must be >= 0, got {value}")


def classify_mode(s: HelperSchedule) -> OperationMode:
    g, b = s.gamma, s.beta
    if b == 1 and g == 1:
        return OperationMode.HARVEST_THEN_JAM
    if not 0 < g < 1:
        raise ModeClassificationError(
            f"gamma={g}: relaying modes need 0 < gamma < 1 and jamming needs gamma = beta = 1")
    if b == 0:
        return OperationMode.HARVEST_THEN_RELAY
    if 0 < b < 1:
        return OperationMode.HARVEST_THEN_RELAY_AND_JAM
    raise ModeClassificationError(
        f"beta={b} with 0 < gamma < 1: pure jamming needs gamma = 1")


def hn_harvest(params: SystemParams, gamma, g_ap_hn):
    """Average HN transmit power available in slot 2 (W)."""
    return params.eta * gamma * params.power * g_ap_hn


def exact_sum_exceeds(a, b, bound):
    """True where the exact real sum ``a + b`` is larger than ``bound``."""
    s = a + b
    b_virtual = s - a
    err = (a - (s - b_virtual)) + (b - b_virtual)  # TwoSum: a + b == s + err exactly
    return (s > bound) | ((s == bound) & (err > 0))


def _split(budget, beta):
    jam = beta * budget
    relay = budget - jam
    # rounding may leave relay + jam one ulp above the budget; trim the relay share
    relay = np.where(exact_sum_exceeds(relay, jam, budget), np.nextafter(relay, 0.0), relay)
    return relay, jam


def hn_power_split(params: SystemParams, s: HelperSchedule, g_ap_hn):
    """(relay power, jamming power) spent in slot 2.

    Their exact sum never exceeds ``hn_harvest``, even after rounding.
    """
    relay, jam = _split(hn_harvest(params, s.gamma, g_ap_hn), s.beta)
    return float(relay), float(jam)


def _hn_snr(power, noise, alpha, gamma, g_ap_hn, rx):
    signal = (1 - gamma) * power * (1 - alpha) * g_ap_hn
    if ReceiverType(rx) is ReceiverType.TYPE_I:
        return signal / noise
    return signal / ((1 - gamma) * power * alpha * g_ap_hn + noise)


def hn_receive_snr(params: SystemParams, gamma, g_ap_hn, rx=ReceiverType.TYPE_I):
    """SINR of the information branch at the HN. Type-I HNs know the AN key."""
    return _hn_snr(params.power, params.noise, params.alpha, gamma, g_ap_hn, rx)


def _hop_sinrs(params, topo, gamma, beta, rx):
    relay, jam = _split(hn_harvest(params, gamma, topo.g_ap_hn), beta)
    first = _hn_snr(params.power, params.noise, params.alpha, gamma, topo.g_ap_hn, rx)
    second = relay * topo.g_hn_in / params.noise
    eve = relay * topo.g_hn_er / (jam * topo.g_hn_er + params.noise)
    return first, second, eve


def af_cascade(first, second):
    """End-to-end SNR of a two-hop amplify-and-forward link."""
    return first * second / (first + second + 1)


def _half_secrecy(legit, eve):
    return 0.5 * np.maximum((np.log1p(legit) - np.log1p(eve)) / LN2, 0.0)


def _df_rate(params, topo, gamma, beta):
    first, second, eve = _hop_sinrs(params, topo, gamma, beta, ReceiverType.TYPE_I)
    return _half_secrecy(np.minimum(first, second), eve)


def _af_rate(params, topo, gamma, beta):
    first, second, eve_hop = _hop_sinrs(params, topo, gamma, beta, ReceiverType.TYPE_II)
    return _half_secrecy(af_cascade(first, second), af_cascade(first, eve_hop))


def _resolve(params, alpha):
    return params if alpha is None else params.with_alpha(alpha)


def df_secrecy_rate(params: SystemParams, topo: RelayTopology, s: HelperSchedule,
                    alpha: float | None = None) -> float:
    """Secrecy rate of decode-and-forward relaying (bits/s/Hz).

    The HN decodes after cancelling the H-AP's AN, so its first hop is the
    Type-I SNR; the link is limited by the weaker hop.
    """
    if s.protocol is not RelayProtocol.DF:
        raise ScheduleError(f"expected a DF schedule, got {s.protocol.value}")
    return float(_df_rate(_resolve(params, alpha), topo, s.gamma, s.beta))


def af_secrecy_rate(params: SystemParams, topo: RelayTopology, s: HelperSchedule,
                    alpha: float | None = None) -> float:
    """Secrecy rate of amplify-and-forward relaying (bits/s/Hz).

    An AF helper does not know the AN, so its first hop carries it as
    interference. The ER sees the same cascade through its own second hop.
    """
    if s.protocol is not RelayProtocol.AF:
        raise ScheduleError(f"expected an AF schedule, got {s.protocol.value}")
    return float(_af_rate(_resolve(params, alpha), topo, s.gamma, s.beta))


def rate_grid(params: SystemParams, topo: RelayTopology, protocol, gammas, betas):
    """Secrecy rate on the ``gammas x betas`` grid (rows index gamma)."""
    g = np.asarray(gammas, dtype=float)[:, None]
    b = np.asarray(betas, dtype=float)[None, :]
    protocol = RelayProtocol(protocol)
    if protocol is RelayProtocol.DF:
        return _df_rate(params, topo, g, b)
    if protocol is RelayProtocol.AF:
        return _af_rate(params, topo, g, b)
    return np.zeros((g.shape[0], b.shape[1]))


class ScheduleResult(NamedTuple):
    schedule: HelperSchedule
    rate: float

    @property
    def mode(self) -> OperationMode | None:
        try:
            return classify_mode(self.schedule)
        except ModeClassificationError:
            return None


def optimize_schedule(params: SystemParams, topo: RelayTopology, protocol=RelayProtocol.DF,
                      alpha: float | None = None, step: float = 0.01,
                      beta_step: float | None = None) -> ScheduleResult:
    """Exhaustive search over ``(gamma, beta)`` in ``[0, 1]^2``.

    Ties go to the smaller gamma, then the smaller beta.
    """
    params = _resolve(params, alpha)
    protocol = RelayProtocol(protocol)
    gammas = grid_points(0.0, 1.0, step)
    if protocol is RelayProtocol.NONE:
        betas = np.array([1.0])
    else:
        betas = grid_points(0.0, 1.0, step if beta_step is None else beta_step)
    rates = rate_grid(params, topo, protocol, gammas, betas)
    i, j = np.unravel_index(int(np.argmax(rates)), rates.shape)
    best = HelperSchedule(float(gammas[i]), float(betas[j]), protocol)
    return ScheduleResult(best, float(rates[i, j]))
