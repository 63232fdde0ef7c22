import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperint import (
    PoleParameter,
    SeriesConfig,
    hyp1f1,
    hyp1f1_imag,
    hyp1f1_scaled,
    hyp1f2,
    log_gamma,
    pochhammer,
)
from hyperint.errors import DomainError

mpmath.mp.dps = 40


def rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


# ---------------------------------------------------------------- pochhammer


def test_pochhammer_examples():
    assert pochhammer(0.123, 0) == 1
    assert pochhammer(3, 4) == 360
    assert pochhammer(-2, 3) == 0


def test_pochhammer_rejects_negative_order():
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


@given(st.integers(-6, 6), st.integers(0, 8), st.integers(0, 8))
def test_pochhammer_split_exact_for_integers(theta, m, n):
    assert pochhammer(theta, m + n) == pochhammer(theta, m) * pochhammer(theta + m, n)


@given(st.floats(0.05, 7.0), st.integers(0, 10), st.integers(0, 10))
def test_pochhammer_split_real(theta, m, n):
    lhs = pochhammer(theta, m + n)
    rhs = pochhammer(theta, m) * pochhammer(theta + m, n)
    assert rel(lhs, rhs) <= 1e-13


# ---------------------------------------------------------------- log_gamma


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (0.5, math.log(math.sqrt(math.pi))), (6.0, math.log(120.0))],
)
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.5])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


@given(st.floats(1e-3, 150.0))
@settings(max_examples=60)
def test_log_gamma_against_mpmath(x):
    ref = float(mpmath.loggamma(x))
    assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


# ---------------------------------------------------------------- 1F1


def test_hyp1f1_examples():
    assert hyp1f1(1, 2, 0).value == 1
    assert hyp1f1(1, 2, 1).value == pytest.approx(math.e - 1, rel=1e-14)
    assert hyp1f1(1, 3, 2).value == pytest.approx(2 * (math.exp(2) - 1 - 2) / 4, rel=1e-14)


@pytest.mark.parametrize("b", [0.0, -1.0, -7.0])
def test_hyp1f1_pole(b):
    with pytest.raises(PoleParameter):
        hyp1f1(1.0, b, 0.5)


def test_hyp1f1_report_fields():
    sv = hyp1f1(1.0, 2.5, 3.0)
    assert sv.converged
    assert 0 < sv.terms_used <= SeriesConfig().max_terms
    assert sv.trunc_err_est <= 1e-14 * abs(sv.value) + 1e-300


def test_hyp1f1_not_converged_flag():
    sv = hyp1f1(1.0, 1.5, 40.0, SeriesConfig(max_terms=5))
    assert not sv.converged
    assert sv.terms_used <= 5


@given(st.floats(-3, 3), st.floats(0.1, 6), st.floats(-50, 50))
@settings(max_examples=80, deadline=None)
def test_hyp1f1_against_reference(a, b, x):
    ref = mpmath.hyp1f1(a, b, x)
    v = hyp1f1(a, b, x).value
    assert abs(v - float(ref)) <= 1e-10 * abs(ref) + 1e-280


@pytest.mark.parametrize("x", [-60.0, -45.5, -30.0])
@pytest.mark.parametrize("a, b", [(1.0, 2.0), (1.0, 3.7), (0.5, 1.25), (2.0, 2.5)])
def test_kummer_path_consistency(a, b, x):
    lhs = math.exp(-x) * hyp1f1(a, b, x).value
    rhs = hyp1f1(b - a, b, -x).value
    assert rel(lhs, rhs) <= 1e-9


@pytest.mark.parametrize("x", [-20.0, -7.5, -1.0, -1e-6, 1e-6, 0.3, 5.0, 20.0])
def test_contiguity_expm1(x):
    assert rel(hyp1f1(1, 2, x).value * x, math.expm1(x)) <= 1e-12


def test_scaled_matches_plain():
    for x in (-30.0, -3.0, 0.0, 4.0):
        assert rel(hyp1f1_scaled(1.0, 2.5, x).value, math.exp(-x) * hyp1f1(1.0, 2.5, x).value) <= 1e-13


def test_kummer_threshold_configurable():
    cfg = SeriesConfig(kummer_threshold=-30.0)
    assert rel(hyp1f1(1.0, 2.0, -10.0, cfg).value, -math.expm1(-10.0) / 10.0) <= 1e-10


# ---------------------------------------------------------------- 1F2


def test_hyp1f2_at_zero():
    assert hyp1f2(0.7, 1.3, 2.9, 0.0).value == 1


def test_hyp1f2_taylor():
    h = 1e-6
    v = hyp1f2(1, 1.5, 2, h).value
    assert abs(v - (1 + h / 3)) <= 1e-12


def test_hyp1f2_sine_round_trip():
    # int_0^t sin = t^2/2 * 1F2(1; 3/2, 2; -t^2/4) = 1 - cos t
    for t in (0.5, math.pi / 2, 3.0, 10.0):
        v = 0.5 * t * t * hyp1f2(1, 1.5, 2, -t * t / 4).value
        assert v == pytest.approx(1 - math.cos(t), rel=1e-12, abs=1e-13)


@pytest.mark.parametrize("c", [0.0, -2.0])
def test_hyp1f2_pole(c):
    with pytest.raises(PoleParameter):
        hyp1f2(1.0, 1.5, c, 1.0)


def test_hyp1f2_cancellation_reported():
    sv = hyp1f2(1.0, 1.0, 1.5, -400.0)
    assert sv.cancellation > 1.0
    assert sv.trunc_err_est >= 0


@given(st.floats(0.2, 3.0), st.floats(0.3, 4.0), st.floats(-200, 200))
@settings(max_examples=60, deadline=None)
def test_hyp1f2_against_mpmath(b, c, x):
    ref = mpmath.hyp1f2(1, b, c, x)
    v = hyp1f2(1.0, b, c, x).value
    assert abs(v - float(ref)) <= 1e-12 * max(1.0, abs(float(ref)))


def test_hyp1f1_imag_against_mpmath():
    for b, y in ((1.5, 2.0), (2.25, -7.0), (3.0, 25.0)):
        re, im = hyp1f1_imag(1.0, b, y)
        ref = mpmath.hyp1f1(1, b, 1j * y)
        assert abs(re.value - float(ref.real)) <= 1e-14 * abs(ref)
        assert abs(im.value - float(ref.imag)) <= 1e-14 * abs(ref)


# ---------------------------------------------------------------- config


@pytest.mark.parametrize(
    "kw",
    [{"rel_tol": 0.0}, {"abs_tol": -1.0}, {"max_terms": 0}, {"consecutive_small": 0}],
)
def test_config_validation(kw):
    with pytest.raises(DomainError):
        SeriesConfig(**kw)
