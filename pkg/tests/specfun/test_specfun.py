import cmath
import math

import numpy as np
import pytest
import scipy.special as sc

from lpplab.errors import DomainError, PoleError
from lpplab.params import ParamSeq
from lpplab.specfun import (H_M, airy, airy_prime, bessel_i0, bessel_j, bessel_j_prime,
                            canonical_product, canonical_product_log, primary_factor_log,
                            required_genus)

AIRY_POINTS = [-30.0, -7.5, -5.0, -1.0, 0.0, 2.5, 3.5, 10.0, 50.0]


def _log_primary_direct(z, p):
    return cmath.log(1 - z) + sum(z ** j / j for j in range(1, p + 1))


@pytest.mark.parametrize("z", [0.3, 0.49 + 0.01j, 0.51, 0.8 + 0.1j, -2.0 + 1.5j])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_primary_factor_matches_direct_formula(z, p):
    assert abs(primary_factor_log(z, p) - _log_primary_direct(z, p)) < 1e-13


def test_primary_factor_errors():
    with pytest.raises(PoleError, match="pole at z = 1"):
        primary_factor_log(1.0, 1)
    with pytest.raises(DomainError, match="must be 1, 2 or 3"):
        primary_factor_log(0.5, 4)


def test_H_M_is_a_log_product():
    seq = ParamSeq.linear(0)
    z = 0.3 + 0.2j
    direct = np.prod([(1 + z / k) * np.exp(-z / k) for k in range(1, 6)])
    assert abs(np.exp(H_M(seq, 5, z)) - direct) < 1e-12
    assert H_M(seq, 0, z) == 0
    with pytest.raises(PoleError, match="hits a point"):
        H_M(seq, 5, -3.0)


@pytest.mark.parametrize("z", [0.7, -2.5, 0.3 + 0.4j, 1.5 - 3.0j])
def test_canonical_product_of_integers_is_a_gamma_ratio(z):
    # prod_k (1 - z/k) e^{z/k} = e^{gamma z} / Gamma(1 - z)
    value, M = canonical_product(ParamSeq.linear(0), 1, z)
    expected = np.exp(np.euler_gamma * z) / sc.gamma(1 - z)
    assert abs(value - expected) <= 1e-10 * max(1.0, abs(expected))
    assert M >= 8


def test_canonical_product_vanishes_on_the_zero_set():
    value, _ = canonical_product(ParamSeq.linear(0), 1, 2.0)
    assert value == 0


def test_canonical_product_tail_is_consistent():
    seq = ParamSeq.power(0.4)
    z = np.array([1.5 + 2.0j, -3.0 + 0.5j])
    short, _ = canonical_product_log(seq, 2, z)
    long, M = canonical_product_log(seq, 2, z, M=4000)
    assert M == 4000
    assert np.max(np.abs(np.exp(short) - np.exp(long))) < 1e-9 * np.max(np.abs(np.exp(long)))


def test_required_genus():
    assert required_genus(ParamSeq.linear(3)) == 1
    assert required_genus(ParamSeq.power(0.6)) == 1
    assert required_genus(ParamSeq.power(0.4)) == 2
    assert required_genus(ParamSeq.power(0.3)) == 3
    with pytest.raises(DomainError, match="no canonical product"):
        required_genus(ParamSeq.power(0.2))
    with pytest.raises(DomainError, match="convergent product"):
        canonical_product_log(ParamSeq.power(0.4), 1, 1.0)


@pytest.mark.parametrize("x", AIRY_POINTS)
def test_airy_matches_reference(x):
    ai, aip, _, _ = sc.airy(x)
    assert airy(x) == pytest.approx(ai, rel=1e-9, abs=1e-12)
    assert airy_prime(x) == pytest.approx(aip, rel=1e-9, abs=1e-12)


def test_airy_branches_agree_at_the_switches():
    assert airy(3.0, branch="series") == pytest.approx(airy(3.0, branch="integral"), abs=1e-11)
    assert airy(-8.0, branch="series") == pytest.approx(airy(-8.0, branch="asymptotic"),
                                                        abs=1e-10)
    assert airy_prime(-1.5, method="fd") == pytest.approx(airy_prime(-1.5), abs=1e-8)


def test_airy_accepts_arrays_and_checks_range():
    x = np.array([[-1.0, 0.0], [4.0, 12.0]])
    values = airy(x)
    assert values.shape == (2, 2)
    assert values[0, 1] == pytest.approx(0.355028053887817239, abs=1e-15)
    with pytest.raises(DomainError, match="must lie in"):
        airy(-41.0)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 9.0])
@pytest.mark.parametrize("x", [0.1, 5.0, 8.0, 20.0, 59.0, 61.0, 200.0])
def test_bessel_j_matches_reference(nu, x):
    assert bessel_j(nu, x) == pytest.approx(sc.jv(nu, x), abs=1e-10)


@pytest.mark.parametrize("nu", [0.0, 1.0, 3.0])
def test_bessel_j_prime_matches_reference(nu):
    x = np.array([0.0, 0.5, 7.0, 30.0])
    assert np.allclose(bessel_j_prime(nu, x), sc.jvp(nu, x), atol=1e-10, rtol=0)


def test_bessel_box_and_i0():
    with pytest.raises(DomainError, match="order must lie"):
        bessel_j(11.0, 1.0)
    with pytest.raises(DomainError, match="argument must lie"):
        bessel_j(1.0, -1.0)
    for x in (0.0, 3.0, 20.0):
        assert bessel_i0(x) == pytest.approx(sc.i0(x), rel=1e-12)
    with pytest.raises(DomainError, match="bessel_i0"):
        bessel_i0(51.0)
    assert math.isfinite(bessel_j(0.0, 1000.0))
