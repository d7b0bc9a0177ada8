from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from srstirling.series import (EgfSeries, SeriesError, compose, cosh_x, exp_series, exp_x, geometric,
                               log1p_x, log_series, reversion, sinh_x)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def series(order, t0=None):
    head = st.just(Fraction(t0)) if t0 is not None else small
    return st.tuples(head, st.lists(small, min_size=order, max_size=order)).map(
        lambda p: EgfSeries([p[0]] + p[1]))


def invertible(order):
    return st.tuples(series(order, 0), st.sampled_from([-2, -1, Fraction(1, 2), 1, 3])).map(
        lambda p: EgfSeries([0, p[1]] + list(p[0].taylor[2:])))


def test_egf_view():
    e = exp_x(6)
    assert e.egf_list() == [1] * 7
    assert EgfSeries.from_egf([1, 1, 2, 6]).taylor == (1, 1, 1, 1)


def test_named_series():
    N = 9
    assert (exp_x(N) - exp_x(N).alternate()).scale(Fraction(1, 2)) == sinh_x(N)
    assert cosh_x(N) * cosh_x(N) - sinh_x(N) * sinh_x(N) == EgfSeries.one(N)
    assert log1p_x(N).exp() == EgfSeries([1, 1], N)
    assert geometric(N) * EgfSeries([1, -1], N) == EgfSeries.one(N)


def test_reversion_sinh():
    r = sinh_x(6).reversion()
    assert r.taylor[:6] == (0, 1, 0, Fraction(-1, 6), 0, Fraction(3, 40))


def test_bell_numbers_from_exp():
    b = (exp_x(8) - 1).exp()
    assert b.egf_list() == [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def test_errors():
    with pytest.raises(SeriesError):
        exp_x(4).compose(exp_x(4))
    with pytest.raises(SeriesError):
        EgfSeries([0, 0, 1], 4).reversion()
    with pytest.raises(SeriesError):
        EgfSeries([0, 1], 4).reciprocal()
    with pytest.raises(SeriesError):
        exp_x(3) + exp_x(4)
    with pytest.raises(SeriesError):
        EgfSeries([2, 1], 3).log()
    with pytest.raises(SeriesError):
        exp_x(3).egf(4)


def test_functional_wrappers():
    f = sinh_x(8)
    assert compose(f, reversion(f)) == EgfSeries.x(8)
    assert exp_series(log_series(exp_x(8))) == exp_x(8)


@settings(max_examples=100, deadline=None)
@given(series(8), series(8), series(8))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == EgfSeries.zero(8)


@settings(max_examples=100, deadline=None)
@given(series(8), series(8, 0), series(8, 0))
def test_compose_associative(a, b, c):
    assert a.compose(b).compose(c) == a.compose(b.compose(c))


@settings(max_examples=100, deadline=None)
@given(invertible(12))
def test_reversion_round_trip(f):
    g = f.reversion()
    x = EgfSeries.x(12)
    assert f.compose(g) == x
    assert g.compose(f) == x


@settings(max_examples=100, deadline=None)
@given(series(12, 1))
def test_exp_log(s):
    assert s.log().exp() == s


@settings(max_examples=100, deadline=None)
@given(series(10, 0))
def test_log_exp(a):
    assert a.exp().log() == a


@settings(max_examples=100, deadline=None)
@given(series(10, 1))
def test_reciprocal(a):
    assert a * a.reciprocal() == EgfSeries.one(10)


@settings(max_examples=50, deadline=None)
@given(series(10))
def test_derivative_integral(a):
    assert a.integral().derivative() == a


def test_counting_series_integral():
    # surjections: 1/(2 - e^x)
    s = (EgfSeries.constant(2, 10) - exp_x(10)).reciprocal()
    vals = s.egf_list()
    assert all(v.denominator == 1 for v in vals)
    assert vals[:6] == [1, 1, 3, 13, 75, 541]
