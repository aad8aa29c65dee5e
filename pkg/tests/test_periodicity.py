import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracperiod import periodicity as P
from fracperiod.errors import DomainError, MeanNotZeroError, WindowTooShortError
from fracperiod.fracops import GridFunction, UniformGrid, frac_integral

TWO_PI = 2 * math.pi

# mpmath 40-digit quadrature values, alpha = 0.5, T = 2 pi (scripts/derive_oracles.py)
KERNEL_MOMENTS = {
    1: -0.8608154493380315346757853019409785000716,
    2: -0.1116785972861897759959725387332358686039,
    5: -0.02095945014106375595499479433004043456594,
    100: -0.0002009778224417999915457151339211288973281,
}
PHI_AT_1 = -0.4435910517256464049196511805976486470578
PSI = {
    0.0: 1.894693378204330175438514457219934647281,
    1.0: 1.594632291729774392249429889036134985469,
    10.0: 0.8690740254939176385439932024036269726673,
    100.0: 0.3093518421017164078023477486473149089272,
    1e4: 0.0314109930479681736366799915069630634373,
}


@pytest.fixture(scope="module")
def sin():
    return P.PeriodicSignal.sine()


@pytest.fixture(scope="module")
def zero():
    return P.PeriodicSignal.constant(0.0, TWO_PI)


# {{{ signal


def test_signal_rejects_wrong_period():
    with pytest.raises(DomainError):
        P.PeriodicSignal(math.sin, 3.0)
    with pytest.raises(DomainError):
        P.PeriodicSignal(math.sin, -TWO_PI)


def test_signal_with_custom_period():
    f = P.PeriodicSignal.sine(1.5)
    assert f(0.375) == pytest.approx(1.0)


# }}}

# {{{ kernel moments


@pytest.mark.parametrize("n", sorted(KERNEL_MOMENTS))
def test_kernel_moment_oracle(sin, n):
    assert P.kernel_moment(sin, 0.5, n) == pytest.approx(KERNEL_MOMENTS[n], abs=1e-12)


def test_kernel_moment_two_routes_agree(sin):
    v1 = P.kernel_moment(sin, 0.5, 1)
    assert abs(v1) > 0.1
    assert abs(v1 - P.kernel_moment_composite(sin, 0.5, 1)) <= 1e-8


@pytest.mark.parametrize("alpha", [0.2, 0.7, 0.9])
def test_kernel_moment_routes_agree_other_orders(sin, alpha):
    for n in (1, 3):
        a = P.kernel_moment(sin, alpha, n)
        b = P.kernel_moment_composite(sin, alpha, n)
        assert abs(a - b) <= 1e-8


def test_kernel_moment_of_zero(zero):
    assert all(P.kernel_moment(zero, 0.5, n) == 0 for n in (1, 2, 7))


def test_kernel_moment_rejects_bad_n(sin):
    for n in (0, -1, 1.5):
        with pytest.raises(DomainError):
            P.kernel_moment(sin, 0.5, n)


def test_kernel_moment_decay(sin):
    _, cp, cm = P.mean_abs_parts(sin)
    for n in range(2, 30):
        assert abs(P.kernel_moment(sin, 0.5, n)) <= ((n - 1) * TWO_PI) ** -0.5 * (cp + cm)


def test_some_moment_is_large(sin):
    assert max(abs(P.kernel_moment(sin, 0.5, n)) for n in range(1, 6)) > 0.1


# }}}

# {{{ shifted kernel and psi


def test_shifted_kernel_oracle(sin):
    assert P.shifted_kernel_integral(sin, 0.5, 1.0) == pytest.approx(PHI_AT_1, abs=1e-12)


@pytest.mark.parametrize("n", range(1, 11))
def test_shift_consistency(sin, n):
    lhs = P.shifted_kernel_integral(sin, 0.5, (n - 1) * TWO_PI)
    assert lhs == pytest.approx(P.kernel_moment(sin, 0.5, n), abs=1e-9)


def test_shifted_kernel_of_zero(zero):
    assert P.shifted_kernel_integral(zero, 0.3, 2.0) == 0


def test_negative_t_rejected(sin):
    for fn in (P.shifted_kernel_integral, P.psi_integral, P.psi_bound):
        with pytest.raises(DomainError):
            fn(sin, 0.5, -1.0)


@pytest.mark.parametrize("t", sorted(PSI))
def test_psi_oracle(sin, t):
    assert P.psi_integral(sin, 0.5, t) == pytest.approx(PSI[t], abs=1e-10)


def test_psi_sandwich(sin):
    parts = P.mean_abs_parts(sin)
    for t in [0.0, 0.1, 1.0, 3.0, 10.0, 100.0, 1e3, 1e4, 1e6]:
        lo, hi = P.psi_bound(sin, 0.5, t, parts=parts)
        assert lo <= P.psi_integral(sin, 0.5, t) <= hi


@settings(max_examples=25)
@given(st.floats(0.05, 0.95), st.floats(0, 50))
def test_psi_sandwich_property(alpha, t):
    f = P.PeriodicSignal.cosine()
    lo, hi = P.psi_bound(f, alpha, t)
    assert lo - 1e-9 <= P.psi_integral(f, alpha, t) <= hi + 1e-9


def test_psi_bound_values(sin):
    assert P.psi_bound(sin, 0.5, 0.0)[1] == pytest.approx(2 * TWO_PI**0.5, rel=1e-12)
    t = 10.0
    assert P.psi_bound(sin, 0.5, t)[1] == pytest.approx(2 * ((TWO_PI + t) ** 0.5 - t**0.5), rel=1e-12)
    assert P.psi_bound(sin, 0.5, 1e12)[1] < 1e-5


def test_psi_bound_requires_zero_mean():
    with pytest.raises(MeanNotZeroError):
        P.psi_bound(P.PeriodicSignal.constant(1.0), 0.5, 1.0)


def test_psi_of_zero(zero):
    assert P.psi_integral(zero, 0.5, 3.0) == 0


# }}}

# {{{ mean parts and moments


def test_mean_abs_parts(sin):
    mean, cp, cm = P.mean_abs_parts(sin)
    assert abs(mean) <= 1e-12
    assert cp == pytest.approx(2, abs=1e-12) and cm == pytest.approx(2, abs=1e-12)
    assert P.mean_abs_parts(P.PeriodicSignal.constant(1.0)) == pytest.approx((1, 1, 0))
    assert P.mean_abs_parts(P.PeriodicSignal.constant(0.0)) == (0, 0, 0)


def test_moment_sequence():
    sin_m = P.moment_sequence(P.PeriodicSignal.sine(), 3)
    assert abs(sin_m[0]) <= 1e-12
    assert sin_m[1] == pytest.approx(-TWO_PI, rel=1e-12)
    cos_m = P.moment_sequence(P.PeriodicSignal.cosine(), 2)
    assert abs(cos_m[0]) <= 1e-12 and abs(cos_m[1]) <= 1e-10
    assert cos_m[2] == pytest.approx(4 * math.pi, rel=1e-12)
    assert np.all(P.moment_sequence(P.PeriodicSignal.constant(0.0), 4) == 0)
    with pytest.raises(DomainError):
        P.moment_sequence(P.PeriodicSignal.sine(), -1)


# }}}

# {{{ defect


def sampled_sin(n=8000):
    return GridFunction.from_callable(np.sin, UniformGrid(8 * math.pi, n))


def test_defect_true_period():
    r = P.defect(sampled_sin(), TWO_PI)
    assert r.sup_defect <= 1e-9
    assert r.snap_distance <= 1e-12
    assert r.window == (0.0, pytest.approx(6 * math.pi))


def test_defect_of_fractional_integral():
    g = sampled_sin()
    r = P.defect(frac_integral(g, 0.5), TWO_PI)
    assert r.sup_defect > 0.1 and r.l2_defect > 0


def test_defect_of_constant_is_exactly_zero():
    g = GridFunction.from_callable(lambda t: 0 * t + 4.2, UniformGrid(5.0, 100))
    for T in (0.05, 1.0, 2.3, 4.9):
        r = P.defect(g, T)
        assert r.sup_defect == 0 and r.l2_defect == 0


def test_defect_snaps():
    g = GridFunction.from_callable(np.sin, UniformGrid(10.0, 100))
    r = P.defect(g, 1.04)
    assert r.snapped_period == pytest.approx(1.0)
    assert r.snap_distance == pytest.approx(0.04)
    assert r.samples == 91


def test_defect_window_errors():
    g = sampled_sin(100)
    with pytest.raises(WindowTooShortError):
        P.defect(g, 8 * math.pi)
    with pytest.raises(WindowTooShortError):
        P.defect(g, 30.0)
    with pytest.raises(DomainError):
        P.defect(g, 0.0)


def test_scan_finds_period():
    reports = P.defect_scan(sampled_sin(), 1.0, 10.0, 1000)
    assert len(reports) == 1000
    best = reports[0]
    assert abs(best.T_tilde - TWO_PI) <= 9 / 999
    sups = [r.sup_defect for r in reports]
    assert sups == sorted(sups)


def test_scan_single_candidate():
    reports = P.defect_scan(sampled_sin(), 2.0, 2.0, 50)
    assert len(reports) == 1 and reports[0].T_tilde == 2.0


def test_scan_of_fractional_integral_bounded_below():
    # the defect is continuous in T and vanishes at T = 0, so the scan starts
    # away from 0; oracle minimum on [0.5, 10] is 0.321 (near T = 6.5)
    g = frac_integral(sampled_sin(), 0.5)
    reports = P.defect_scan(g, 0.5, 10.0, 400)
    assert reports[0].sup_defect > 0.3


def test_scan_rejects_bad_range():
    g = sampled_sin(100)
    with pytest.raises(DomainError):
        P.defect_scan(g, 0.0, 1.0, 10)
    with pytest.raises(DomainError):
        P.defect_scan(g, 2.0, 1.0, 10)
    with pytest.raises(WindowTooShortError):
        P.defect_scan(g, 1.0, 30.0, 10)


def test_report_serialization():
    reports = P.defect_scan(sampled_sin(400), 1.0, 7.0, 5)
    buf = io.StringIO()
    P.reports_to_csv(reports, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "T_tilde,sup_defect,l2_defect,window_lo,window_hi"
    rows = P.reports_from_csv(text)
    assert rows == [r.row() for r in reports]
    assert json.loads(P.reports_to_json(reports)) == rows


# }}}
