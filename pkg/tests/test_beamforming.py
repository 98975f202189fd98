import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from secwipt.beamforming import (BeamPair, BeamformingError, DegenerateChannelError,
                                 DegenerateGeometryError, DimensionError, coupling_power,
                                 mrt_beam, zf_beam)
from secwipt.channel import rayleigh_channel


def random_unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def test_mrt_axis_vector():
    assert np.allclose(mrt_beam([1, 0, 0, 0]), [1, 0, 0, 0])


def test_mrt_scaling():
    w = mrt_beam([2, 0])
    assert np.allclose(w, [1, 0])
    assert coupling_power([2, 0], w) == pytest.approx(4.0)


def test_mrt_rejects_zero_channel():
    with pytest.raises(DegenerateChannelError):
        mrt_beam([0, 0, 0])


def test_mrt_beats_random_beams():
    rng = np.random.default_rng(7)
    h = rayleigh_channel(11, 4)
    best = coupling_power(h, mrt_beam(h))
    assert best == pytest.approx(np.vdot(h, h).real, rel=1e-12)
    for _ in range(1000):
        assert coupling_power(h, random_unit(rng, 4)) <= best


def test_zf_already_orthogonal():
    assert np.allclose(zf_beam([1, 0], [0, 1]), [1, 0])


def test_zf_removes_component():
    w = zf_beam(np.array([1, 1]) / np.sqrt(2), [1, 0])
    assert np.allclose(w, [0, 1])


def test_zf_random_pair_orthogonality():
    target, avoid = rayleigh_channel(1, 4), rayleigh_channel(2, 4)
    w = zf_beam(target, avoid)
    assert abs(np.linalg.norm(w) - 1) <= 1e-12
    assert coupling_power(avoid, w) / np.vdot(avoid, avoid).real <= 1e-12


@pytest.mark.parametrize("target, avoid, exc", [
    ([1, 1j], [2, 2j], DegenerateGeometryError),
    ([1], [2], DimensionError),
    ([1, 0], [1, 0, 0], DimensionError),
    ([0, 0], [1, 0], DegenerateChannelError),
])
def test_zf_errors(target, avoid, exc):
    with pytest.raises(exc):
        zf_beam(target, avoid)


def test_coupling_examples():
    assert coupling_power([1, 0], [0, 1]) == 0
    assert coupling_power([1, 0], [1, 0]) == 1
    with pytest.raises(DimensionError):
        coupling_power([1, 0], [1, 0, 0])


@given(st.integers(0, 2**32), st.integers(2, 8))
def test_coupling_cauchy_schwarz(seed, n):
    h, w = rayleigh_channel(seed, n), rayleigh_channel(seed + 1, n)
    assert coupling_power(h, w) <= np.vdot(h, h).real * np.vdot(w, w).real * (1 + 1e-12)


@given(st.integers(0, 2**32), st.floats(0, 6.283))
def test_coupling_global_phase_invariance(seed, phi):
    h, w = rayleigh_channel(seed, 4), mrt_beam(rayleigh_channel(seed + 1, 4))
    rotated = w * cmath.exp(1j * phi)
    assert coupling_power(h, rotated) == pytest.approx(coupling_power(h, w), rel=1e-12, abs=1e-300)


@settings(max_examples=50)
@given(st.integers(0, 2**32), st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_zf_scale_invariance(seed, s1, s2):
    target, avoid = rayleigh_channel(seed, 4), rayleigh_channel(seed + 7, 4)
    w = zf_beam(target, avoid)
    w2 = zf_beam(s1 * target, s2 * avoid)
    # equal up to a global phase
    assert abs(abs(np.vdot(w, w2)) - 1) < 1e-12


def test_beam_pair_requires_unit_norm():
    BeamPair(np.array([1, 0]), None)
    with pytest.raises(BeamformingError):
        BeamPair(np.array([2, 0]), np.array([0, 1]))
