import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nsea_df import (DeflectionRangeError, DeflectionState, NseeGeometry,
                     potential_energy, spring_length, spring_tension,
                     stiffness_exact, stiffness_maclaurin, torque_exact,
                     torque_maclaurin)
from nsea_df.nsee import _exact_kernel

thetas = st.floats(-3.1, 3.1, allow_nan=False)


def planar_distance(R, r, theta):
    # outer attachment at (R, 0), inner at angle theta on radius r
    return math.hypot(R - r * math.cos(theta), -r * math.sin(theta))


def central_diff(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


def test_derived_constants(geom):
    assert geom.alpha == pytest.approx(2 * 0.03 ** 2 / 0.0028)
    assert geom.alpha == pytest.approx(0.642857, rel=1e-6)
    assert geom.beta == pytest.approx(0.0028)
    assert geom.gain == pytest.approx(358.4)


@pytest.mark.parametrize('kw', [
    dict(n=4, k_s=1.0, R=0.04, r=0.07),
    dict(n=4, k_s=1.0, R=0.04, r=0.04),
    dict(n=4, k_s=1.0, R=0.07, r=0.0),
    dict(n=0, k_s=1.0, R=0.07, r=0.04),
    dict(n=4, k_s=0.0, R=0.07, r=0.04),
])
def test_geometry_rejects_invalid(kw):
    with pytest.raises(ValueError):
        NseeGeometry(**kw)


def test_alpha_not_settable():
    with pytest.raises(TypeError):
        NseeGeometry(n=1, k_s=1.0, R=2.0, r=1.0, alpha=3.0)


def test_spring_length_examples(geom):
    assert spring_length(geom, 0.0) == pytest.approx(0.03, abs=1e-15)
    assert spring_length(geom, math.pi / 2) == pytest.approx(math.sqrt(0.0065))
    expected = planar_distance(0.07, 0.04, 0.3)
    assert expected == pytest.approx(0.033913, abs=5e-7)
    assert spring_length(geom, 0.3) == pytest.approx(expected, rel=1e-14)


@given(thetas)
def test_spring_length_matches_coordinates(theta):
    g = NseeGeometry(4, 32000.0, 0.07, 0.04)
    ls = spring_length(g, theta)
    assert ls == pytest.approx(planar_distance(0.07, 0.04, theta), rel=1e-12)
    assert 0.03 - 1e-15 <= ls <= 0.11 + 1e-15


@pytest.mark.parametrize('fn', [spring_length, spring_tension, torque_exact,
                                potential_energy, stiffness_exact])
@pytest.mark.parametrize('theta', [math.pi, -math.pi, 4.0, [0.1, 3.2],
                                   float('nan')])
def test_domain_guard(geom, fn, theta):
    with pytest.raises(DeflectionRangeError):
        fn(geom, theta)


def test_deflection_state_guard():
    DeflectionState(1.0, 2.0)
    with pytest.raises(DeflectionRangeError):
        DeflectionState(math.pi)


def test_spring_tension_examples(geom):
    assert spring_tension(geom, 0.0) == pytest.approx(0.0, abs=1e-9)
    expected = 32000.0 * (planar_distance(0.07, 0.04, 0.3) - 0.03)
    assert expected == pytest.approx(125.2, abs=0.05)
    assert spring_tension(geom, 0.3) == pytest.approx(expected, rel=1e-10)
    assert spring_tension(geom, -0.3) == spring_tension(geom, 0.3)


def test_torque_exact_examples(geom):
    assert torque_exact(geom, 0.0) == 0.0
    fd = central_diff(lambda x: potential_energy(geom, x), 0.3)
    assert fd == pytest.approx(12.2, abs=0.05)
    assert torque_exact(geom, 0.3) == pytest.approx(fd, rel=1e-6)


def test_torque_exact_odd_on_grid(geom):
    th = np.linspace(-3.0, 3.0, 601)
    np.testing.assert_array_equal(torque_exact(geom, -th),
                                  -torque_exact(geom, th))


@given(thetas)
def test_odd_even_symmetry(theta):
    g = NseeGeometry(4, 32000.0, 0.07, 0.04)
    assert torque_exact(g, -theta) == -torque_exact(g, theta)
    assert torque_maclaurin(g, -theta) == -torque_maclaurin(g, theta)
    assert potential_energy(g, -theta) == potential_energy(g, theta)
    assert stiffness_exact(g, -theta) == stiffness_exact(g, theta)
    assert stiffness_maclaurin(g, -theta) == stiffness_maclaurin(g, theta)


def test_energy_minimum_at_rest(geom):
    th = np.linspace(-3.0, 3.0, 301)
    U = potential_energy(geom, th)
    assert potential_energy(geom, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert np.all(U >= 0)


def test_energy_gradient_equivalence(geom):
    h = 1e-6
    th = np.linspace(-2.5, 2.5, 1001)
    fd = (potential_energy(geom, th + h) - potential_energy(geom, th - h)) / (2 * h)
    tau = torque_exact(geom, th)
    err = np.abs(tau - fd) / np.maximum(1.0, np.abs(tau))
    assert err.max() < 1e-6


def test_stiffness_exact(geom):
    assert stiffness_exact(geom, 0.0) == pytest.approx(0.0, abs=1e-10)
    fd = central_diff(lambda x: torque_exact(geom, x), 0.3)
    assert stiffness_exact(geom, 0.3) == pytest.approx(fd, rel=1e-6)
    th = np.linspace(0.01, 2.5, 500)
    fd = central_diff(lambda x: torque_exact(geom, x), th)
    np.testing.assert_allclose(stiffness_exact(geom, th), fd, rtol=1e-6)


def test_exact_vanishes_cubically(geom):
    # tau ~ c theta^3 near the origin, so tau/theta^3 tends to a constant
    th = np.array([1e-2, 5e-3, 2.5e-3])
    ratio = torque_exact(geom, th) / th ** 3
    assert ratio[1] == pytest.approx(ratio[2], rel=1e-3)
    assert ratio[2] == pytest.approx(geom.gain / geom.alpha, rel=1e-3)


def test_torque_maclaurin_examples(geom):
    assert torque_maclaurin(geom, 0.0) == 0.0
    # 358.4 * 0.3^3 / (alpha + 0.09)
    expected = 358.4 * 0.027 / (0.642857142857143 + 0.09)
    assert expected == pytest.approx(13.20, abs=0.005)
    assert torque_maclaurin(geom, 0.3) == pytest.approx(expected, rel=1e-12)
    ratio = torque_maclaurin(geom, 0.01) / torque_exact(geom, 0.01)
    assert abs(ratio - 1) < 1e-3


def test_maclaurin_series_consistency(geom):
    th = np.geomspace(0.2, 1e-3, 12)
    err = np.abs(torque_maclaurin(geom, th) / torque_exact(geom, th) - 1)
    assert np.all(np.diff(err) < 0)
    assert err[-1] < 1e-5


def maclaurin_rel_err(geom, th):
    return np.abs(torque_maclaurin(geom, th) - torque_exact(geom, th)) \
        / np.abs(torque_exact(geom, th))


def test_maclaurin_accuracy_small_deflection(geom):
    # the 1 % error bound is reached at theta ~ 0.0995 rad, just inside 0.1
    th = np.linspace(1e-3, 0.099, 200)
    assert maclaurin_rel_err(geom, th).max() < 0.01
    assert maclaurin_rel_err(geom, 0.1) == pytest.approx(0.0101, abs=1e-4)
    err = maclaurin_rel_err(geom, np.linspace(1e-3, 1.0, 500))
    assert np.all(np.diff(err) > 0)


def test_stiffness_maclaurin(geom):
    assert stiffness_maclaurin(geom, 0.0) == 0.0
    fd = central_diff(lambda x: torque_maclaurin(geom, x), 0.3)
    assert stiffness_maclaurin(geom, 0.3) == pytest.approx(fd, rel=1e-8)
    th = np.linspace(0.01, 2.5, 500)
    fd = central_diff(lambda x: torque_maclaurin(geom, x), th)
    np.testing.assert_allclose(stiffness_maclaurin(geom, th), fd, rtol=1e-6)
    assert stiffness_maclaurin(geom, 1e6) == pytest.approx(358.4, rel=1e-9)
    assert torque_maclaurin(geom, 1e6) / 1e6 == pytest.approx(358.4, rel=1e-9)


def test_monotone_on_working_range(geom):
    # stiffness changes sign near 1.7603 rad where the torque peaks (~230.5 Nm)
    th = np.linspace(0.0, 1.76, 4001)
    assert np.all(np.diff(torque_exact(geom, th)) > 0)
    assert stiffness_exact(geom, 1.76) > 0 > stiffness_exact(geom, 1.761)
    th = np.linspace(1.761, 2.0, 200)
    assert np.all(np.diff(torque_exact(geom, th)) < 0)


def test_scalar_kernel_matches(geom):
    tau = _exact_kernel(geom)
    for th in np.linspace(-3.0, 3.0, 61):
        assert tau(float(th)) == pytest.approx(torque_exact(geom, th),
                                               rel=1e-12, abs=1e-12)
