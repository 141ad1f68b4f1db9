import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from coreshell.specfun import (
    HypergeometricArgs,
    decaying_companion,
    decaying_companion_derivative,
    decaying_companion_pair,
    kummer_m,
    kummer_m_derivative,
    kummer_m_pair,
)

# 40-digit direct series summation
M_1_2_2 = 3.1945280494653250639
HALF_M_2_3_2 = 2.0972640247326624707


def test_m_at_origin_is_one():
    assert kummer_m(0.5, 1.0, 0.0) == 1.0
    for a, b in [(0.4, 0.8), (3.0, 6.0), (7.5, 2.0)]:
        assert kummer_m(a, b, 0) == 1.0


def test_m_examples():
    assert abs(kummer_m(1.0, 1.0, 2.0) - math.exp(2.0)) < 1e-12 * math.exp(2.0)
    assert abs(kummer_m(1.0, 2.0, 2.0) - M_1_2_2) < 1e-12 * M_1_2_2
    assert abs(kummer_m(*HypergeometricArgs(1.0, 2.0, 2.0)) - (math.e**2 - 1) / 2) < 1e-13


def test_m_derivative_examples():
    assert kummer_m_derivative(0.5, 1.0, 0.0) == 0.5
    assert abs(kummer_m_derivative(1.0, 1.0, 1.0) - math.e) < 1e-13
    h = 1e-6
    fd = (kummer_m(1.0, 2.0, 2.0 + h) - kummer_m(1.0, 2.0, 2.0 - h)) / (2 * h)
    value = kummer_m_derivative(1.0, 2.0, 2.0)
    assert abs(value - HALF_M_2_3_2) < 1e-12 * HALF_M_2_3_2
    assert abs(fd - value) < 1e-8 * abs(value)


def test_pair_derivative_matches_contiguous_relation():
    for a, z in [(0.4, 30j), (0.6, -12.0), (1.3, 45.0), (2.2, 3 + 17j)]:
        _, dm = kummer_m_pair(a, 2 * a, z)
        ref = kummer_m_derivative(a, 2 * a, z)
        assert abs(dm - ref) <= 1e-12 * abs(ref)


@given(
    a=st.floats(0.05, 10.0),
    z=st.floats(-20.0, 20.0),
)
@settings(max_examples=200, deadline=None)
def test_kummer_identity(a, z):
    assert abs(kummer_m(a, a, z) / math.exp(z) - 1) < 1e-12


@pytest.mark.parametrize(
    "a,b,z",
    [(0.4, 0.8, 55j), (0.6, 1.2, 31.7j), (1.0, 2.0, 20j), (2.3, 4.6, -15 + 40j), (0.5, 1.0, 3 + 7j), (3.5, 9.0, 48.0), (0.7, 1.4, -33.0)],
)
def test_m_against_mpmath(a, b, z):
    ref = complex(mpmath.hyp1f1(a, b, z))
    assert abs(kummer_m(a, b, z) - ref) < 1e-12 * abs(ref)


def test_array_input_matches_scalar():
    z = np.array([0.0, 2.5, -7.0, 12j, 40j, 41.0])
    values = kummer_m(0.6, 1.2, z)
    assert values.shape == z.shape
    for v, zi in zip(values, z):
        assert abs(v - kummer_m(0.6, 1.2, zi)) < 1e-13 * abs(v)


def test_domain_errors():
    with pytest.raises(ValueError):
        kummer_m(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        kummer_m(0.5, -2.0, 1.0)
    with pytest.raises(ValueError):
        decaying_companion(1.0, 2.0, 0.0)
    with pytest.raises(ValueError):
        decaying_companion(1.0, 2.0, -3.0)
    with pytest.raises(ValueError):
        decaying_companion(1.0, 2.0, np.array([1.0, -1.0]))


def _u_quadrature(a, b, z):
    f = lambda t: math.exp(-z * t) * t ** (a - 1) * (1 + t) ** (b - a - 1)
    value = quad(f, 0, 1, epsabs=0, epsrel=1e-13, limit=200)[0]
    value += quad(f, 1, np.inf, epsabs=0, epsrel=1e-13, limit=200)[0]
    return value / math.gamma(a)


def test_u_examples():
    assert abs(_u_quadrature(1.0, 2.0, 4.0) - 0.25) < 1e-12
    assert abs(decaying_companion(1.0, 2.0, 4.0) - 0.25) < 1e-14
    assert abs(decaying_companion(1.0, 2.0, 8.0) - 0.125) < 1e-14
    assert abs(decaying_companion(0.5, 1.0, 30.0) / 30.0**-0.5 - 1) < 0.05


def test_u_derivative_examples():
    assert abs(decaying_companion_derivative(1.0, 2.0, 4.0) + 0.0625) < 1e-14
    assert abs(decaying_companion_derivative(1.0, 2.0, 2.0) + 0.25) < 1e-14
    h = 1e-5
    fd = (decaying_companion(0.5, 1.0, 10.0 + h) - decaying_companion(0.5, 1.0, 10.0 - h)) / (2 * h)
    exact = decaying_companion_derivative(0.5, 1.0, 10.0)
    assert abs(fd - exact) < 1e-7 * abs(exact)


@pytest.mark.parametrize("a", [0.3, 0.4, 0.5, 0.6, 1.0, 1.7, 3.0])
@pytest.mark.parametrize("x", [0.004, 0.3, 2.0, 7.5, 25.0, 39.0, 55.0])
def test_u_against_references(a, x):
    ref = float(mpmath.hyperu(a, 2 * a, x))
    assert abs(decaying_companion(a, 2 * a, x) - ref) < 1e-12 * ref


def test_u_matches_quadrature_oracle():
    for a, x in [(0.4, 1.5), (0.6, 0.2), (1.5, 6.0)]:
        assert abs(decaying_companion(a, 2 * a, x) / _u_quadrature(a, 2 * a, x) - 1) < 1e-9


def test_u_array_chaining_matches_scalar():
    x = np.linspace(0.01, 60.0, 301)
    u, du = decaying_companion_pair(0.6, 1.2, x)
    for i in range(0, 301, 25):
        us, dus = decaying_companion_pair(0.6, 1.2, x[i])
        assert abs(u[i] - us) < 1e-13 * abs(us)
        assert abs(du[i] - dus) < 1e-13 * abs(dus)


def _ode_residual(a, b, z, w, dw, d2w):
    terms = np.array([z * d2w, (b - z) * dw, -a * w])
    return abs(terms.sum()) / np.abs(terms).max()


def _second_difference(f, z, h):
    # five-point stencil, O(h^4)
    return (-f(z + 2 * h) + 16 * f(z + h) - 30 * f(z) + 16 * f(z - h) - f(z - 2 * h)) / (12 * h * h)


@pytest.mark.parametrize("a", [0.4, 0.5, 0.6, 1.0, 2.5])
def test_ode_residuals(a):
    b = 2 * a
    m = lambda z: kummer_m(a, b, z)
    u = lambda z: decaying_companion(a, b, z)
    for z in [0.7, 3.0, 11.0, 27.0]:
        h = 1e-2 * min(z, 1.0)
        w, dw = kummer_m_pair(a, b, z)
        assert _ode_residual(a, b, z, w, dw, _second_difference(m, z, h)) < 1e-6
        uu, du = decaying_companion_pair(a, b, z)
        assert _ode_residual(a, b, z, uu, du, _second_difference(u, z, h)) < 1e-6
    for y in [5.0, 20.0, 50.0]:
        z = 1j * y
        w, dw = kummer_m_pair(a, b, z)
        assert _ode_residual(a, b, z, w, dw, _second_difference(m, z, 1e-2)) < 1e-6


@pytest.mark.parametrize("a", [0.4, 0.6, 1.0, 1.5])
def test_wronskian(a):
    # W{M, U} = -Gamma(b)/Gamma(a) z^-b e^z, reference at 30 digits
    b = 2 * a
    mpmath.mp.dps = 30
    for z in [0.5, 2.0, 9.0, 24.0]:
        m, dm = kummer_m_pair(a, b, z)
        u, du = decaying_companion_pair(a, b, z)
        w = (m * du - dm * u).real
        ref = float(-mpmath.gamma(b) / mpmath.gamma(a) * mpmath.mpf(z) ** (-b) * mpmath.exp(z))
        assert w != 0
        assert abs(w / ref - 1) < 1e-8


@pytest.mark.parametrize("a", [0.4, 0.5, 0.6, 1.0, 2.0, 3.3])
def test_imaginary_argument_realness(a):
    for y in [0.5, 3.0, 13.0, 37.0, 56.0]:
        v = np.exp(-0.5j * y) * kummer_m(a, 2 * a, 1j * y)
        assert abs(v.imag) <= 1e-10 * abs(v)


def test_deterministic():
    z = np.linspace(0, 50, 64) * 1j
    assert np.array_equal(kummer_m(0.4, 0.8, z), kummer_m(0.4, 0.8, z))
