import math

import numpy as np
import pytest
from scipy.special import digamma

from lpplab.errors import DomainError
from lpplab.params import (Family, LineScaling, ParamSeq, Regime, ScalingPlan, bessel_shift,
                           centering, centering_profile, counting, partial_sum, regime_of,
                           tail_sum, variance_heuristic)


def test_param_seq_values():
    assert ParamSeq.linear(0).t(3) == 3
    assert ParamSeq.linear(-0.5).t1 == 0.5
    assert ParamSeq.power(0.5).t(9) == pytest.approx(3.0)
    assert np.all(ParamSeq.constant(2).values(1, 3) == 2.0)
    assert ParamSeq.power(0.25).alpha == 0.25
    assert ParamSeq.linear(1.5).alpha == 1.0


def test_param_seq_rejects_bad_parameters():
    with pytest.raises(DomainError, match="beta > -1"):
        ParamSeq.linear(-1)
    with pytest.raises(DomainError, match="alpha in"):
        ParamSeq.power(1.5)
    with pytest.raises(DomainError, match="c > 0"):
        ParamSeq.constant(0)
    with pytest.raises(DomainError, match="has no beta"):
        ParamSeq.power(0.5).beta
    with pytest.raises(DomainError, match="Index must be >= 1"):
        ParamSeq.linear(0).t(0)


def test_param_seq_dict_round_trip():
    seq = ParamSeq.power(0.4)
    assert ParamSeq.from_dict(seq.to_dict()) == seq
    with pytest.raises(DomainError, match="Invalid parameter sequence"):
        ParamSeq.from_dict({"family": "cubic", "value": 1})


def test_counting():
    assert counting(ParamSeq.linear(0.5), 3.0) == 2
    assert counting(ParamSeq.power(0.5), 3.0) == 9
    assert counting(ParamSeq.linear(0), 0.5) == 0
    assert counting(ParamSeq.constant(1), 0.5) == 0
    with pytest.raises(DomainError, match="diverges"):
        counting(ParamSeq.constant(1), 1.0)


def test_partial_sums():
    assert partial_sum(ParamSeq.linear(0), 4, 1) == pytest.approx(25 / 12, abs=1e-15)
    assert partial_sum(ParamSeq.linear(0), 0, 1) == 0.0
    assert partial_sum(ParamSeq.linear(0), math.inf, 2) == pytest.approx(math.pi ** 2 / 6,
                                                                          abs=1e-12)
    with pytest.raises(DomainError, match="j >= 1"):
        partial_sum(ParamSeq.linear(0), 4, 0)


def test_tail_sums():
    head = sum(1 / k ** 2 for k in range(1, 11))
    assert tail_sum(ParamSeq.linear(0), 10, 2) == pytest.approx(math.pi ** 2 / 6 - head,
                                                                abs=1e-12)
    # k^{-1/2 * 4} = k^{-2}
    assert tail_sum(ParamSeq.power(0.5), 10, 4) == pytest.approx(math.pi ** 2 / 6 - head,
                                                                 abs=1e-12)
    values = tail_sum(ParamSeq.linear(0), 10, [2, 3])
    assert values.shape == (2,)
    with pytest.raises(DomainError, match="diverges"):
        tail_sum(ParamSeq.constant(1), 10, 2)
    with pytest.raises(DomainError, match="diverges"):
        tail_sum(ParamSeq.linear(0), 10, 1)


def test_centering():
    seq = ParamSeq.linear(0)
    harmonic = [sum(1 / k for k in range(1, M + 1)) for M in range(12)]
    assert centering(seq, 5, 2) == pytest.approx(harmonic[7] + harmonic[3], abs=1e-14)
    profile = centering_profile(seq, 5)
    assert len(profile) == 9
    for k in range(-4, 5):
        assert profile[k + 4] == pytest.approx(centering(seq, 5, k), abs=1e-13)
    with pytest.raises(DomainError, match="must satisfy"):
        centering(seq, 5, 5)


@pytest.mark.parametrize("beta", [-0.5, 0.0, 1.0, 3.7])
def test_bessel_shift_is_twice_digamma(beta):
    assert bessel_shift(beta) == pytest.approx(2 * digamma(1 + beta), abs=1e-10)


def test_bessel_shift_at_zero():
    assert bessel_shift(0.0) == pytest.approx(-2 * np.euler_gamma, abs=1e-12)
    with pytest.raises(DomainError, match="beta > -1"):
        bessel_shift(-1.0)


def test_variance_heuristic():
    assert variance_heuristic(1.0, 1, math.inf) == pytest.approx(1.0)
    assert variance_heuristic(0.5, 2, 8) == pytest.approx(math.log(4))
    with pytest.raises(DomainError):
        variance_heuristic(0.0, 1, 2)


def test_regimes_and_scaling():
    assert regime_of(ParamSeq.linear(0)) is Regime.CASE_A
    assert regime_of(ParamSeq.power(0.7)) is Regime.CASE_A
    assert regime_of(ParamSeq.power(0.4)) is Regime.CASE_B
    assert regime_of(ParamSeq.power(0.2)) is Regime.CASE_C
    with pytest.raises(DomainError, match="not a decaying family"):
        regime_of(ParamSeq.constant(1))

    plan = ScalingPlan(ParamSeq.power(0.4), 100)
    assert plan.d_N == 1.0
    assert plan.r_of(0.25) == 25
    power_law = ScalingPlan(ParamSeq.power(0.4), 100, LineScaling.POWER_LAW)
    assert power_law.r_of(0.25) == math.floor(0.25 * 100 ** 0.8)
    assert plan.describe()["regime"] == "b"
    assert ParamSeq.power(0.4).family is Family.POWER
