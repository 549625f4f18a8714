# tests/test_specfun.py
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tfqkd.Errors import AccuracyError, DomainError
from tfqkd.SpecFun import (
    Interval,
    erf,
    erf_inv,
    erfc,
    gaussian_density,
    gaussian_interval_prob,
    quadrature,
)

reals = st.floats(min_value=-8.0, max_value=8.0, allow_nan=False)


def erf_by_quadrature(v):
    density = lambda s: 2.0 / math.sqrt(math.pi) * math.exp(-s * s)
    return quadrature(density, Interval(0.0, v), 1e-13)


# --- erf / erfc ---


@pytest.mark.parametrize("v, expected", [(0.0, 0.0), (1.65, 0.980376), (-1.65, -0.980376)])
def test_erf_examples(v, expected):
    assert erf(v) == pytest.approx(expected, abs=5e-7)


@pytest.mark.parametrize("v", [0.01, 0.3, 0.84, 1.0, 1.3, 2.2, 3.5, 5.0])
def test_erf_matches_quadrature(v):
    assert abs(erf(v) - erf_by_quadrature(v)) <= 1e-12


@given(reals)
def test_prop_erf_matches_math(v):
    assert abs(erf(v) - math.erf(v)) <= 1e-14


@given(reals)
def test_prop_erfc_matches_math(v):
    assert math.isclose(erfc(v), math.erfc(v), rel_tol=1e-13, abs_tol=1e-300)


@given(reals)
def test_prop_erf_odd(v):
    assert erf(v) + erf(-v) == 0.0


@given(reals, reals)
def test_prop_erf_monotone(a, b):
    lo, hi = min(a, b), max(a, b)
    assert erf(lo) <= erf(hi)
    assert -1.0 <= erf(lo) <= 1.0


def test_erf_infinities():
    assert erf(math.inf) == 1.0
    assert erf(-math.inf) == -1.0
    assert erfc(math.inf) == 0.0


def test_erfc_keeps_tail_precision():
    assert erfc(10.0) == pytest.approx(2.088487583762545e-45, rel=1e-13)


# --- erf_inv ---


@pytest.mark.parametrize("p, expected", [(0.0, 0.0), (0.98, 1.6450), (0.9, 1.1631), (0.8, 0.9062)])
def test_erf_inv_examples(p, expected):
    assert erf_inv(p) == pytest.approx(expected, abs=5e-5)


@given(st.floats(min_value=-0.999999, max_value=0.999999))
def test_prop_erf_inv_inverts(p):
    assert abs(erf(erf_inv(p)) - p) <= 1e-10


@pytest.mark.parametrize("p", [-1.0, 1.0, 1.5, math.nan])
def test_erf_inv_domain(p):
    with pytest.raises(DomainError):
        erf_inv(p)


# --- gaussian_interval_prob ---


@pytest.mark.parametrize(
    "window, expected",
    [
        (Interval.below(0.0), 0.5),
        (Interval(-1.0, 1.0), 0.682689),
        (Interval.everywhere(), 1.0),
    ],
)
def test_interval_prob_examples(window, expected):
    assert gaussian_interval_prob(0.0, 1.0, window) == pytest.approx(expected, abs=5e-7)


def test_interval_prob_rejects_nonpositive_std():
    with pytest.raises(DomainError):
        gaussian_interval_prob(0.0, 0.0, Interval(0.0, 1.0))


def test_tail_window_keeps_relative_precision():
    p = gaussian_interval_prob(0.0, 1.0, Interval(12.0, 13.0))
    expected = 0.5 * (math.erfc(12 / math.sqrt(2)) - math.erfc(13 / math.sqrt(2)))
    assert p == pytest.approx(expected, rel=1e-12)


@given(
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=0.1, max_value=5.0),
    st.floats(min_value=-10.0, max_value=10.0),
    st.floats(min_value=0.0, max_value=5.0),
    st.floats(min_value=0.0, max_value=5.0),
)
def test_prop_interval_prob_additive(mean, std, a, w1, w2):
    b, c = a + w1, a + w1 + w2
    whole = gaussian_interval_prob(mean, std, Interval(a, c))
    parts = gaussian_interval_prob(mean, std, Interval(a, b)) + gaussian_interval_prob(
        mean, std, Interval(b, c)
    )
    assert abs(whole - parts) <= 1e-12


@settings(deadline=None, max_examples=200)
@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.5, max_value=4.0),
    st.floats(min_value=-4.0, max_value=4.0),
    st.floats(min_value=0.0, max_value=8.0),
    st.sampled_from(["finite", "below", "above"]),
)
def test_prop_interval_prob_matches_quadrature(mean, std, offset, width, kind):
    lo = mean + offset
    window = {
        "finite": Interval(lo, lo + width),
        "below": Interval.below(lo),
        "above": Interval.above(lo),
    }[kind]
    expected = quadrature(lambda v: gaussian_density(v, mean, std), window, 1e-11)
    assert abs(gaussian_interval_prob(mean, std, window) - expected) <= 1e-9


# --- Interval ---


def test_interval_rejects_inverted_bounds():
    with pytest.raises(DomainError):
        Interval(1.0, 0.0)


def test_interval_helpers():
    w = Interval(-1.0, 2.0)
    assert w.width == 3.0
    assert w.is_finite
    assert not Interval.above(0.0).is_finite
    assert w.intersect(Interval.above(0.5)) == Interval(0.5, 2.0)
    assert w.intersect(Interval.above(5.0)).width == 0.0


# --- quadrature ---


def test_quadrature_unbounded_density():
    assert quadrature(gaussian_density, Interval.everywhere()) == pytest.approx(1.0, abs=1e-10)


def test_quadrature_half_line():
    assert quadrature(lambda v: math.exp(-v), Interval.above(0.0)) == pytest.approx(1.0, abs=1e-10)


def test_quadrature_lower_half_line():
    value = quadrature(gaussian_density, Interval.below(1.65), 1e-12)
    assert value == pytest.approx(0.5 * (1.0 + erf(1.65 / math.sqrt(2.0))), abs=1e-11)


def test_quadrature_empty_window():
    assert quadrature(math.exp, Interval(1.0, 1.0)) == 0.0


def test_quadrature_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        quadrature(math.exp, Interval(0.0, 1.0), tol=0.0)


def test_quadrature_reports_best_estimate_when_intervals_run_out():
    with pytest.raises(AccuracyError) as info:
        quadrature(
            lambda v: 1.0 / math.sqrt(v) if v > 0 else 0.0,
            Interval(0.0, 1.0),
            1e-15,
            max_intervals=10,
        )
    assert info.value.estimate == pytest.approx(2.0, abs=0.2)
    assert info.value.error_bound > 1e-15
    assert "quadrature" in str(info.value)


@given(st.floats(min_value=-3.0, max_value=3.0), st.floats(min_value=-3.0, max_value=3.0))
@settings(deadline=None, max_examples=50)
def test_prop_quadrature_polynomial(a, b):
    assume(a < b)
    exact = (b**4 - a**4) / 4.0
    assert quadrature(lambda v: v**3, Interval(a, b)) == pytest.approx(exact, abs=1e-9)
