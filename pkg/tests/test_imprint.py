from math import pi

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentum_interferometry.basis import eigenstate
from momentum_interferometry.imprint import PhaseProfile, apply_imprint, profile_value
from momentum_interferometry.momentum import momentum_density, reference_density


def test_step_profile():
    p = PhaseProfile.step()
    assert profile_value(p, -1e-12) == 0.0
    assert profile_value(p, 0.0) == 1.0
    assert profile_value(p, 2.0) == 1.0
    assert profile_value(PhaseProfile.step(0.3), 0.29) == 0.0


def test_sigmoid_profile():
    p = PhaseProfile.sigmoid(0.1)
    assert profile_value(p, 0.0) == 0.5
    assert abs(profile_value(p, 1.0) - 1) < 1e-8
    assert abs(profile_value(p, -1.0)) < 1e-8


@given(st.floats(-5, 5), st.floats(0.01, 2))
@settings(max_examples=100, deadline=None)
def test_sigmoid_antisymmetry(y, zeta):
    p = PhaseProfile.sigmoid(zeta)
    assert abs(profile_value(p, y) + profile_value(p, -y) - 1) < 1e-14


def test_profile_validation():
    with pytest.raises(ValueError):
        PhaseProfile("ramp")
    with pytest.raises(ValueError):
        PhaseProfile.sigmoid(0.0)
    with pytest.raises(ValueError):
        PhaseProfile("step", 0.0, 0.1)
    assert PhaseProfile.from_smoothing(0.0).kind == "step"
    assert PhaseProfile.from_smoothing(0.2).kind == "sigmoid"


def test_imprint_preserves_norm_and_modulus():
    psi = eigenstate(2)
    out = apply_imprint(psi, 1.3, PhaseProfile.sigmoid(0.3, 0.2))
    assert np.allclose(np.abs(out.values), np.abs(psi.values))
    assert abs(out.norm() - psi.norm()) < 1e-14


def test_zero_phase_is_identity():
    psi = eigenstate(1)
    assert np.array_equal(apply_imprint(psi, 0.0, PhaseProfile.step()).values, psi.values)


def test_imprints_compose():
    psi = eigenstate(0)
    p = PhaseProfile.step()
    twice = apply_imprint(apply_imprint(psi, 0.4, p), 0.6, p)
    once = apply_imprint(psi, 1.0, p)
    assert np.allclose(twice.values, once.values, atol=1e-15)
    y = np.array([-0.5, 0.5])
    assert np.allclose(twice(y), once(y), atol=1e-15)


def test_two_pi_step_is_identity():
    psi = eigenstate(0)
    out = apply_imprint(psi, 2 * pi, PhaseProfile.step())
    assert np.allclose(out.values, psi.values, atol=1e-14)


def _step_gap(zeta, q):
    psi = apply_imprint(eigenstate(0), pi, PhaseProfile.sigmoid(zeta))
    return float(np.max(np.abs(momentum_density(psi, q).values - reference_density(q, pi))))


def test_sigmoid_to_step_gap_is_linear_in_zeta():
    q = np.linspace(-4, 4, 161)
    gaps = np.array([_step_gap(z, q) for z in (1e-2, 1e-3, 1e-4)])
    ratios = gaps / np.array([1e-2, 1e-3, 1e-4])
    assert np.all(np.abs(ratios / ratios[-1] - 1) < 0.05)
    assert 0.45 < ratios[-1] < 0.55


@pytest.mark.xfail(strict=True, reason="the gap is O(zeta), about 0.51 zeta, not below 1e-6")
def test_sigmoid_at_1e4_matches_step_to_1e6():
    q = np.linspace(-4, 4, 161)
    assert _step_gap(1e-4, q) < 1e-6
