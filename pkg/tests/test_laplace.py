import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracperiod import laplace as L
from fracperiod.errors import DomainError
from fracperiod.periodicity import PeriodicSignal

TWO_PI = 2 * math.pi
# mpmath quad of (2 pi + t)^0.5 e^{-st} over [0, inf) (scripts/derive_oracles.py)
VARPHI_HALF = {1.0: 2.69301479155962318038019857489, 2.0: 1.30139727399347095078639346947}


def power_tail_numeric(alpha, T, s):
    return L.laplace_numeric(lambda t: (T + t) ** alpha, s, 40 / s, L.PowerTail(1.0, T, alpha))


def test_numeric_of_zero():
    assert L.laplace_numeric(lambda t: 0.0, 1.0, 10.0) == 0


def test_numeric_exponential():
    assert L.laplace_numeric(lambda t: math.exp(-t), 1.0, 50.0) == pytest.approx(0.5, abs=1e-10)


def test_numeric_rejects_bad_args():
    with pytest.raises(DomainError):
        L.laplace_numeric(math.sin, 0.0, 1.0)
    with pytest.raises(DomainError):
        L.laplace_numeric(math.sin, 1.0, math.inf)


@pytest.mark.parametrize("s", sorted(VARPHI_HALF))
def test_closed_form_oracle(s):
    assert L.varphi_transform_closed(0.5, TWO_PI, s) == pytest.approx(VARPHI_HALF[s], rel=1e-13)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0, 5.0])
def test_closed_form_matches_quadrature(alpha, s):
    closed = L.varphi_transform_closed(alpha, TWO_PI, s)
    assert closed > 0
    assert abs(power_tail_numeric(alpha, TWO_PI, s) - closed) <= 1e-6


def test_tail_matters():
    # horizon alone misses a visible part of the transform
    s, a = 0.5, 0.5
    head = L.laplace_numeric(lambda t: (TWO_PI + t) ** a, s, 10.0)
    assert L.varphi_transform_closed(a, TWO_PI, s) - head > 1e-2


def test_small_argument_limit():
    assert L.varphi_transform_closed(0.5, 1e-12, 1.0) == pytest.approx(L.varphi_transform_limit(0.5, 1.0), rel=1e-9)


def test_log_space_branch_is_continuous():
    T = TWO_PI
    s_switch = L.LOG_SPACE_THRESHOLD / T
    below = L.varphi_transform_closed(0.5, T, s_switch * (1 - 1e-12))
    above = L.varphi_transform_closed(0.5, T, s_switch * (1 + 1e-12))
    assert above == pytest.approx(below, rel=1e-9)


@settings(max_examples=40)
@given(st.floats(0.01, 0.99), st.floats(1e-3, 100), st.floats(1e-3, 1e4))
def test_closed_form_positive_and_finite(alpha, T, s):
    v = L.varphi_transform_closed(alpha, T, s)
    assert 0 < v < math.inf


def test_periodic_laplace_values():
    assert L.periodic_laplace(PeriodicSignal.constant(1.0, 3.0), 0.7) == pytest.approx(1 / 0.7, rel=1e-12)
    assert L.periodic_laplace(PeriodicSignal.sine(), 1.0) == pytest.approx(0.5, rel=1e-12)
    assert L.periodic_laplace(PeriodicSignal.cosine(), 2.0) == pytest.approx(0.4, rel=1e-12)


def test_periodic_laplace_small_lambda():
    # constant: 1/lambda must survive lambda T far below machine epsilon
    assert L.periodic_laplace(PeriodicSignal.constant(1.0, 1.0), 1e-20) == pytest.approx(1e20, rel=1e-12)


@pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 3.0])
def test_periodic_laplace_matches_truncated(lam):
    f = PeriodicSignal.sine()
    T = f.period
    pieces = [
        L.laplace_numeric(lambda t, k=k: f(t) * math.exp(-lam * k * T), lam, T) for k in range(50)
    ]
    direct = math.fsum(pieces)
    assert L.periodic_laplace(f, lam) == pytest.approx(direct, abs=1e-9 + math.exp(-50 * lam * T))


def test_ratio_symmetric_case():
    assert np.all(L.ratio_limit_check(2.0, 2.0, [1.0, 1e-3, 1e-9]) == 1.0)


def test_ratio_limits():
    assert abs(L.ratio_limit_check(TWO_PI, math.pi, [1e-8])[0] - 2) <= 1e-7
    assert L.ratio_limit_check(1.0, 3.0, [1e-6])[0] == pytest.approx(1 / 3, abs=1e-6)


def test_ratio_monotone():
    lams = np.logspace(1, -8, 40)
    r = L.ratio_limit_check(TWO_PI, math.pi, lams)
    assert np.all(np.diff(r) > -1e-15) and r[-1] < 2
    r = L.ratio_limit_check(math.pi, TWO_PI, lams)
    assert np.all(np.diff(r) < 1e-15) and r[-1] > 0.5


def test_ratio_rejects_nonpositive():
    with pytest.raises(DomainError):
        L.ratio_limit_check(1.0, 2.0, [1.0, 0.0])


def test_moment_demo_sin():
    rep = L.moment_extraction_demo(PeriodicSignal.sine(), 1)
    assert rep.first_nonzero_index == 1
    assert rep.moments[1] == pytest.approx(-TWO_PI, rel=1e-12)
    assert json.loads(rep.to_json()) == rep.to_dict()


def test_moment_demo_cos():
    rep = L.moment_extraction_demo(PeriodicSignal.cosine(), 2)
    assert rep.first_nonzero_index == 2
    assert rep.moments[2] == pytest.approx(4 * math.pi, rel=1e-12)


def test_moment_demo_zero():
    rep = L.moment_extraction_demo(PeriodicSignal.constant(0.0), 3)
    assert rep.first_nonzero_index is None
    assert "all zero" in rep.verdict
