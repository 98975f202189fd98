import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from secwipt.beamforming import BeamPair, DegenerateGeometryError, coupling_power, mrt_beam
from secwipt.channel import rayleigh_channel
from secwipt.swipt_miso import (BeamStrategy, TimeSharingCorners, corner_points, design_beams,
                                miso_sinrs, rate_energy_point, rate_energy_region)
from secwipt.swipt_siso import ReceiverType, SystemParams

from conftest import FIG3_NOISE

T1, T2 = ReceiverType.TYPE_I, ReceiverType.TYPE_II
AN1, AN2, TS = BeamStrategy.AN_TYPE_I, BeamStrategy.AN_TYPE_II, BeamStrategy.NO_AN_TIME_SHARING


def params(alpha=0.5, power=1.0):
    return SystemParams(power=power, noise=FIG3_NOISE, eta=0.5, alpha=alpha)


def test_orthogonal_channels_decouple():
    h_i, h_e = np.array([0.01, 0, 0, 0]), np.array([0, 0.3, 0, 0])
    beams = BeamPair(mrt_beam(h_i), mrt_beam(h_e))
    g1, ge = miso_sinrs(params(), h_i, h_e, beams, T1)
    g2, _ = miso_sinrs(params(), h_i, h_e, beams, T2)
    assert ge == 0
    assert g1 == g2


def test_types_coincide_without_an(fig5_channels):
    h_i, h_e = fig5_channels
    beams = design_beams(h_i, h_e, AN1)
    assert miso_sinrs(params(0.0), h_i, h_e, beams, T1) == miso_sinrs(params(0.0), h_i, h_e, beams, T2)


def _pure_python_oracle(alpha):
    """Four-antenna LOS geometry evaluated with scalar complex arithmetic only."""
    n_ant = 4

    def ch(d, ang):
        return [math.sqrt(d ** -3 / n_ant) * cmath.exp(1j * math.pi * n * math.sin(math.radians(ang)))
                for n in range(n_ant)]

    def inner(h, w):
        return sum(x.conjugate() * y for x, y in zip(h, w))

    def unit(v):
        s = math.sqrt(sum(abs(x) ** 2 for x in v))
        return [x / s for x in v]

    hi, he = ch(20, 0), ch(2, 60)
    wi, we = unit(hi), unit(he)
    c = lambda h, w: abs(inner(h, w)) ** 2  # noqa: E731
    P, s2 = 1.0, 1e-11
    g1 = P * (1 - alpha) * c(hi, wi) / s2
    g2 = P * (1 - alpha) * c(hi, wi) / (P * alpha * c(hi, we) + s2)
    ge = P * (1 - alpha) * c(he, wi) / (P * alpha * c(he, we) + s2)
    rate = max(math.log2(1 + g1) - math.log2(1 + ge), 0.0)
    q = 0.5 * (P * (1 - alpha) * c(he, wi) + P * alpha * c(he, we))
    return g1, g2, ge, rate, q


def test_fig5_sinrs_against_oracle(fig5_channels):
    h_i, h_e = fig5_channels
    beams = design_beams(h_i, h_e, AN1)
    g1, g2, ge, _, _ = _pure_python_oracle(0.5)
    a1, ae = miso_sinrs(params(), h_i, h_e, beams, T1)
    a2, _ = miso_sinrs(params(), h_i, h_e, beams, T2)
    assert a1 == pytest.approx(g1, rel=1e-12)
    assert a2 == pytest.approx(g2, rel=1e-12)
    assert ae == pytest.approx(ge, rel=1e-12)
    # frozen from the oracle
    assert a1 == pytest.approx(6.25e6, rel=1e-12)
    assert a2 == pytest.approx(27.507752429650136, rel=1e-9)
    assert ae == pytest.approx(0.0363532281002258, rel=1e-9)


def test_fig5_rate_energy_point_against_oracle(fig5_channels):
    h_i, h_e = fig5_channels
    pt = rate_energy_point(params(), h_i, h_e, design_beams(h_i, h_e, AN1), T1)
    _, _, _, rate, q = _pure_python_oracle(0.5)
    assert pt.rate == pytest.approx(rate, rel=1e-12)
    assert pt.energy == pytest.approx(q, rel=1e-12)
    assert pt.rate == pytest.approx(22.523909178437332, rel=1e-12)
    assert pt.energy == pytest.approx(0.03238603837831383, rel=1e-12)


def test_an_type2_energy_beam_nulls_in(fig5_channels):
    h_i, h_e = fig5_channels
    beams = design_beams(h_i, h_e, AN2)
    assert coupling_power(h_i, beams.w_energy) <= 1e-12 * np.vdot(h_i, h_i).real


def test_no_an_secrecy_corner(fig5_channels):
    h_i, h_e = fig5_channels
    corners = design_beams(h_i, h_e, TS)
    assert isinstance(corners, TimeSharingCorners)
    assert coupling_power(h_e, corners.secrecy.w_info) <= 1e-12 * np.vdot(h_e, h_e).real
    sec, eng = corner_points(params(), h_i, h_e)
    assert sec.energy <= 1e-12 * 0.5 * 1.0 * np.vdot(h_e, h_e).real
    assert sec.rate > 0
    _, ge = miso_sinrs(params(0.0), h_i, h_e, corners.secrecy)
    assert ge <= 1e-12 * 1.25e10
    assert eng.rate == 0
    assert eng.energy == pytest.approx(0.5 * np.vdot(h_e, h_e).real, rel=1e-12)


def test_orthogonal_channels_an_strategies_agree():
    h_i = np.array([0.01, 0.01j, 0, 0])
    h_e = np.array([0, 0, 0.2, -0.1])
    b1, b2 = design_beams(h_i, h_e, AN1), design_beams(h_i, h_e, AN2)
    for w1, w2 in ((b1.w_info, b2.w_info), (b1.w_energy, b2.w_energy)):
        assert abs(abs(np.vdot(w1, w2)) - 1) < 1e-12


def test_zf_strategy_rejects_parallel_channels():
    h = np.array([1, 1j, 0.5])
    with pytest.raises(DegenerateGeometryError):
        design_beams(h, 2 * h, AN2)


def test_all_energy_to_er(fig5_channels):
    h_i, h_e = fig5_channels
    beams = BeamPair(mrt_beam(h_i), mrt_beam(h_e))
    pt = rate_energy_point(params(1.0), h_i, h_e, beams, T1)
    assert pt.rate == 0
    assert pt.energy == pytest.approx(0.5 * np.vdot(h_e, h_e).real, rel=1e-12)


def test_region_boundary_alphas():
    h_i = np.array([0.01, 0.01j, 0, 0])
    h_e = np.array([0, 0, 0.2, -0.1])
    region = rate_energy_region(params(), h_i, h_e, AN1, T1, [0.0, 1.0])
    assert len(region) == 2
    low, high = region
    assert low.rate > 0 and high.rate == 0
    assert high.energy == pytest.approx(0.5 * np.vdot(h_e, h_e).real)


def test_time_sharing_endpoints(fig5_channels):
    h_i, h_e = fig5_channels
    sec, eng = corner_points(params(), h_i, h_e)
    seg = rate_energy_region(params(), h_i, h_e, TS, T1, np.linspace(0, 1, 11))
    assert seg[0] == sec and seg[-1] == eng
    assert len(seg) == 11


def test_region_rejects_alphas_outside_unit_interval(fig5_channels):
    with pytest.raises(ValueError):
        rate_energy_region(params(), *fig5_channels, AN1, T1, [0.0, 1.5])


def _frontier_rate_at(frontier, q):
    rates = [p.rate for p in frontier if p.energy >= q]
    return max(rates) if rates else -math.inf


def test_type1_dominates_type2_on_fig5(fig5_channels):
    h_i, h_e = fig5_channels
    r1 = rate_energy_region(params(), h_i, h_e, AN1, T1)
    r2 = rate_energy_region(params(), h_i, h_e, AN2, T2)
    assert any(p.rate > 0 for p in r2)
    for p in r2:
        assert _frontier_rate_at(r1, p.energy) >= p.rate - 1e-9


def test_type1_dominates_time_sharing_on_common_range(fig5_channels):
    # harvested-power levels that both the AN Type-I and no-AN schemes reach
    h_i, h_e = fig5_channels
    r1 = rate_energy_region(params(), h_i, h_e, AN1, T1)
    ts = rate_energy_region(params(), h_i, h_e, TS, T1)
    q_lo, q_hi = min(p.energy for p in r1), max(p.energy for p in r1)
    common = [p for p in ts if q_lo <= p.energy <= q_hi]
    assert common
    for p in common:
        assert _frontier_rate_at(r1, p.energy) >= p.rate - 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.floats(0, 1), st.sampled_from([AN1, AN2]))
def test_energy_upper_bound(seed, alpha, strategy):
    h_i, h_e = rayleigh_channel(seed, 4, 1e-4), rayleigh_channel(seed + 1, 4, 0.1)
    pt = rate_energy_point(params(alpha), h_i, h_e, design_beams(h_i, h_e, strategy), T1)
    assert pt.energy <= 0.5 * np.vdot(h_e, h_e).real * (1 + 1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.floats(0, 6.283), st.floats(0, 6.283))
def test_global_phase_invariance(seed, phi_i, phi_e):
    h_i, h_e = rayleigh_channel(seed, 4, 1e-4), rayleigh_channel(seed + 1, 4, 0.1)
    alphas = np.linspace(0, 1, 11)
    scale = 0.5 * np.vdot(h_e, h_e).real
    for strategy, rx in ((AN1, T1), (AN2, T2), (BeamStrategy.NO_AN_TIME_SHARING, T1)):
        a = rate_energy_region(params(), h_i, h_e, strategy, rx, alphas)
        b = rate_energy_region(params(), h_i * cmath.exp(1j * phi_i), h_e * cmath.exp(1j * phi_e),
                               strategy, rx, alphas)
        assert len(a) == len(b)
        for p, q in zip(a, b):
            assert q.rate == pytest.approx(p.rate, rel=1e-12, abs=1e-12)
            assert q.energy == pytest.approx(p.energy, rel=1e-12, abs=1e-12 * scale)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.floats(0, 1))
def test_type1_sinr_dominates_type2_same_beams(seed, alpha):
    h_i, h_e = rayleigh_channel(seed, 4, 1e-4), rayleigh_channel(seed + 1, 4, 0.1)
    beams = design_beams(h_i, h_e, AN2)
    g1, _ = miso_sinrs(params(alpha), h_i, h_e, beams, T1)
    g2, _ = miso_sinrs(params(alpha), h_i, h_e, beams, T2)
    assert g1 >= g2
