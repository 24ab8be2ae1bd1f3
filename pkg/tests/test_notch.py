from math import pi, sqrt

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentum_interferometry.basis import half_line_moments
from momentum_interferometry.momentum import excited_density, reference_density
from momentum_interferometry.notch import (
    APPROX,
    AmbiguousNotch,
    NoNotch,
    NotchMetrics,
    approx_reference,
    find_notch,
    find_peak,
    q0_approx_excited,
    q0_exact_reference,
    reference_extrema_residual,
)


def ref_notch(phi, y0=0.0):
    return find_notch(lambda q: reference_density(q, phi, y0))


def test_constants_against_mpmath():
    mp.mp.dps = 30
    e = mp.erfi(mp.sqrt(mp.pi) / 2)
    alpha = mp.e ** (-mp.pi / 2) * e**2 / mp.sqrt(mp.pi)
    beta = mp.e ** (-mp.pi / 2) * e * (-2 * mp.e ** (mp.pi / 4) + mp.pi + mp.pi * e) / mp.pi**1.5
    assert abs(APPROX.alpha - float(alpha)) < 1e-14
    assert abs(APPROX.beta - float(beta)) < 1e-14
    assert (round(APPROX.alpha, 3), round(APPROX.beta, 3)) == (0.210, 0.148)


@pytest.mark.parametrize("phi", [0.55 * pi, 0.7 * pi, pi, 1.3 * pi, 1.45 * pi])
def test_located_notch_matches_root(phi):
    m = ref_notch(phi)
    assert abs(m.q0 - q0_exact_reference(phi)) < 1e-6


def test_exact_root_against_mpmath():
    mp.mp.dps = 30
    for phi in (0.6 * pi, 1.2 * pi):
        want = mp.findroot(lambda q: mp.erfi(q / mp.sqrt(2)) + mp.cot(phi / 2), 0.3)
        assert abs(q0_exact_reference(phi) - float(want)) < 1e-12


def test_exact_root_at_pi_and_wrap():
    assert abs(q0_exact_reference(pi)) < 1e-14
    assert abs(q0_exact_reference(1.2 * pi) - q0_exact_reference(-0.8 * pi)) < 1e-14
    with pytest.raises(ValueError):
        q0_exact_reference(0.0)


@given(st.floats(0.52 * pi, 1.48 * pi))
@settings(max_examples=30, deadline=None)
def test_notch_antisymmetry(phi):
    a = q0_exact_reference(phi)
    b = q0_exact_reference(2 * pi - phi)
    assert abs(a + b) < 1e-10


def test_density_vanishes_at_root():
    for phi in (0.7 * pi, 1.3 * pi):
        assert reference_density(q0_exact_reference(phi), phi) < 1e-20


def test_full_visibility_at_pi():
    m = ref_notch(pi)
    assert abs(m.visibility - 1) < 1e-8
    assert abs(m.q0) < 1e-8
    assert abs(m.q_plus + m.q_minus) < 1e-6


def test_extrema_satisfy_residual():
    phi = 1.15 * pi
    m = ref_notch(phi)
    assert np.max(np.abs(reference_extrema_residual([m.q_minus, m.q0, m.q_plus], phi))) < 1e-6


def test_approximations_near_pi():
    phi = 1.02 * pi
    m, a = ref_notch(phi), approx_reference(phi)
    assert abs(m.q0 - a.q0) < 1e-3
    assert abs(a.width - sqrt(2 * pi)) < 1e-14
    # linearized maxima land near the true ones
    assert abs(m.q_plus - a.q_plus) < 0.2 and abs(m.q_minus - a.q_minus) < 0.2


def test_visibility_law_is_a_lower_bound():
    for phi in np.linspace(0.6 * pi, 1.4 * pi, 9):
        assert ref_notch(phi).visibility >= approx_reference(phi).visibility - 1e-9


def test_visibility_slope_matches_constants():
    d = 1e-3
    v = ref_notch(pi + d).visibility
    # first-order decay matches beta/alpha to within a few percent
    assert abs((1 - v) / d / (APPROX.beta / APPROX.alpha) - 1) < 0.05


def test_excited_q0_approx():
    a, b = half_line_moments(2)
    assert q0_approx_excited(1.1 * pi, 2) == pytest.approx(a / b * 0.05 * pi, abs=1e-15)
    a, b = half_line_moments(1)
    assert q0_approx_excited(0.1, 1) == pytest.approx(a / b * 0.05, abs=1e-15)


def test_excited_notch_tracks_approx():
    for n in (1, 2, 3):
        phi = 0.03 * pi + (pi if n % 2 == 0 else 0.0)
        m = find_notch(lambda q: excited_density(q, phi, n))
        assert abs(m.q0 / q0_approx_excited(phi, n) - 1) < 0.05


def test_no_notch_for_gaussian():
    with pytest.raises(NoNotch):
        find_notch(lambda q: np.exp(-q * q))


def test_missing_flank_raises():
    with pytest.raises(NoNotch):
        find_notch(lambda q: q * q, search=(-1, 1))


def test_window_widening_finds_far_flanks():
    f = lambda q: q * q * np.exp(-q * q / 16)
    m = find_notch(f, search=(-3, 3))
    assert abs(m.q_plus - 4) < 1e-5 and abs(m.q_minus + 4) < 1e-5


def test_ambiguous_notch():
    f = lambda q: (q * q - 1) ** 2 * np.exp(-q * q / 8)
    with pytest.raises(AmbiguousNotch):
        find_notch(f, search=(-4, 4))


def test_notch_metrics_validation():
    with pytest.raises(ValueError):
        NotchMetrics(0.0, 0.5, 1.0, 1.0, 0.0, 1.0, 1.0)


def test_find_peak():
    assert abs(find_peak(lambda q: np.exp(-(q - 0.3) ** 2)) - 0.3) < 1e-7
    with pytest.raises(NoNotch):
        find_peak(lambda q: q, search=(-1, 1))


def test_visibility_formula():
    m = ref_notch(1.2 * pi)
    n0, nm, np_ = m.depth, m.peak_minus, m.peak_plus
    assert m.visibility == pytest.approx(min(np_ - n0, nm - n0) / ((np_ + nm) / 2 + n0), rel=1e-14)
