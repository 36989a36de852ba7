import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import mp_jacobi, quad_K
from tadpole_nls.elliptic import (
    agm, complete_K, dn_extended_expansion, jacobi, k1_expansion,
)
from tadpole_nls.errors import DomainError

# adaptive quadrature of int_0^{pi/2} (1 - k^2 sin^2 t)^{-1/2} dt
K_HALF = 1.6857503548125961


def test_K_values():
    assert complete_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert complete_K(0.5) == pytest.approx(K_HALF, rel=1e-14)
    assert complete_K(0.5) == pytest.approx(quad_K(0.5), rel=1e-13)


def test_K_diverges_monotonically():
    k = 1.0 - np.geomspace(1e-1, 1e-14, 30)
    K = [complete_K(float(x)) for x in k]
    assert all(b > a for a, b in zip(K, K[1:]))
    with pytest.raises(DomainError):
        complete_K(1.0)


@given(st.floats(min_value=0.0, max_value=0.999))
def test_K_against_quadrature(k):
    assert complete_K(k) == pytest.approx(quad_K(k), rel=1e-12)


def test_K_accepts_complementary_modulus():
    kc = 1e-9
    assert complete_K(kc=kc) == pytest.approx(math.log(4 / kc), rel=1e-12)


def test_agm_known_value():
    # Gauss's constant
    assert 1.0 / agm(1.0, math.sqrt(2.0)) == pytest.approx(0.8346268416740731, rel=1e-15)


def test_jacobi_initial_values():
    e = jacobi(0.0, 0.7)
    assert (e.sn, e.cn, e.dn) == (0.0, 1.0, 1.0)


def test_jacobi_degenerate_moduli():
    x = np.linspace(-5, 5, 51)
    e1 = jacobi(x, 1.0)
    np.testing.assert_allclose(e1.sn, np.tanh(x), atol=1e-15)
    np.testing.assert_allclose(e1.cn, 1 / np.cosh(x), atol=1e-15)
    np.testing.assert_allclose(e1.dn, 1 / np.cosh(x), atol=1e-15)
    e0 = jacobi(x, 0.0)
    np.testing.assert_allclose(e0.sn, np.sin(x), atol=1e-15)
    np.testing.assert_allclose(e0.cn, np.cos(x), atol=1e-15)
    np.testing.assert_allclose(e0.dn, 1.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-20.0, max_value=20.0), st.floats(min_value=0.0, max_value=1.0))
def test_jacobi_identities(x, k):
    e = jacobi(x, k)
    assert abs(e.sn ** 2 + e.cn ** 2 - 1.0) <= 1e-12
    assert abs(e.dn ** 2 + k * k * e.sn ** 2 - 1.0) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-8.0, max_value=8.0), st.sampled_from([0.1, 0.5, 0.9, 0.999, 1 - 1e-6, 1 - 1e-10]))
def test_jacobi_against_mpmath(x, k):
    sn, cn, dn = mp_jacobi(x, k)
    e = jacobi(x, k)
    assert (e.sn, e.cn, e.dn) == pytest.approx((sn, cn, dn), abs=1e-13)


@pytest.mark.parametrize("k", [0.1, 0.5, 0.9, 0.999])
def test_derivative_relations(k):
    K = complete_K(k)
    x = np.linspace(0.0, 3.0 * K, 301)
    h = 1e-5
    e, ep, em = jacobi(x, k), jacobi(x + h, k), jacobi(x - h, k)
    np.testing.assert_allclose((ep.sn - em.sn) / (2 * h), e.cn * e.dn, atol=1e-8)
    np.testing.assert_allclose((ep.cn - em.cn) / (2 * h), -e.sn * e.dn, atol=1e-8)
    np.testing.assert_allclose((ep.dn - em.dn) / (2 * h), -k * k * e.sn * e.cn, atol=1e-8)


@pytest.mark.parametrize("k", [0.3, 0.9, 0.999999])
def test_quarter_period(k):
    e = jacobi(complete_K(k), k)
    assert e.sn == pytest.approx(1.0, abs=1e-12)
    assert e.dn == pytest.approx(math.sqrt(1 - k * k), rel=1e-6, abs=1e-12)


def test_hyperbolic_limit_in_its_regime():
    # two-term forms hold where e^{2x}(1 - k) = O(1): x in [6, 8] at 1 - k = 1e-6
    k = 1 - 1e-6
    x = np.linspace(6.0, 8.0, 41)
    e = jacobi(x, k)
    dn1, cn1 = k1_expansion(x, k)
    env = 1e-6 * x * np.exp(-x) * 100.0
    assert np.all(np.abs(e.dn - dn1) <= env)
    assert np.all(np.abs(e.cn - cn1) <= env)
    assert np.all(np.abs(e.sn - 1.0) <= 100.0 * (1 - k))


def test_stated_hyperbolic_envelope_on_3_to_6():
    # The envelope as stated on x in [3, 6]. The O(e^{-3x}) gap between sech x and 2e^{-x}
    # is independent of 1 - k and exceeds 1e-4 x e^{-x} for x below ~4.6, so this fails.
    k = 1 - 1e-6
    x = np.linspace(3.0, 6.0, 31)
    e = jacobi(x, k)
    dn1, cn1 = k1_expansion(x, k)
    env = 1e-6 * x * np.exp(-x) * 100.0
    assert np.all(np.abs(e.dn - dn1) <= env)
    assert np.all(np.abs(e.cn - cn1) <= env)
    assert np.all(np.abs(e.sn - 1.0) <= 100.0 * (1 - k))


def test_extended_expansion_uniform_in_x():
    # first order in kc^2 = 1 - k^2; the second-order remainder scales like kc^4 x cosh x
    for kc2 in (1e-6, 1e-8):
        kc = math.sqrt(kc2)
        k = math.sqrt(1 - kc2)
        x = np.linspace(0.5, 8.0, 60)
        e = jacobi(x, kc=kc)
        err = np.abs(e.dn - dn_extended_expansion(x, kc=kc))
        assert np.all(err <= 0.1 * kc2 ** 2 * x * np.cosh(x) + 1e-15)
        assert k < 1.0
