import random

import pytest
from hypothesis import given, settings, strategies as st

from srstirling.indexset import (ALL, EVEN, ODD, IndexSetError, atleast, congruence, egf_E, egf_E_derived,
                                 egf_F, explicit, is_plus_one_monoid, ogf_shifted, parse, upto)
from srstirling.series import cosh_x, exp_x, sinh_x

GRAMMAR = ["all", "odd", "even", "{1,2}", "{1,3,8}", "2..", "1..3", "mod 3"]


@pytest.mark.parametrize("text", GRAMMAR)
def test_parse_round_trip(text):
    S = parse(text)
    assert parse(str(S)) == S
    assert str(S) == text


def test_parse_whitespace_and_errors():
    assert parse(" { 1 , 3 ,8 } ") == explicit(1, 3, 8)
    assert parse("MOD3") == congruence(3)
    assert parse("1..") == ALL
    for bad in ["", "{}", "{1,,3}", "0..", "1..0", "mod 0", "{1,1}", "primes"]:
        with pytest.raises(IndexSetError):
            parse(bad)


def test_membership():
    assert [s for s in range(1, 10) if s in ODD] == [1, 3, 5, 7, 9]
    assert [s for s in range(1, 10) if s in congruence(3)] == [1, 4, 7]
    assert [s for s in range(0, 10) if s in atleast(2)] == list(range(2, 10))
    assert upto(3).elements_up_to(100) == [1, 2, 3]
    assert explicit(1, 3, 8).max_element() == 8
    assert EVEN.min_element() == 2
    assert not ALL.has_zero


def test_shift_and_derivative():
    assert explicit(1, 3, 8).shift(-1).elements_up_to(20) == [0, 2, 7]
    with pytest.raises(IndexSetError):
        explicit(1, 3, 8).shift(-1, allow_zero=False)
    with pytest.raises(IndexSetError):
        explicit(1, 3, 8).shift(-2)
    assert ODD.derivative().elements_up_to(8) == [0, 2, 4, 6, 8]
    assert str(ODD.derivative()) == "odd-1"


def test_remove():
    S = ODD.remove(1)
    assert str(S) == "odd-{1}"
    assert S.elements_up_to(7) == [3, 5, 7]
    assert explicit(1, 3, 8).remove(3) == explicit(1, 8)
    with pytest.raises(IndexSetError):
        EVEN.remove(1)


@pytest.mark.parametrize("text", GRAMMAR)
def test_derivative_of_shift(text):
    S = parse(text)
    assert S.shift(1).derivative().elements_up_to(30) == S.elements_up_to(30)


def test_monoid_verdicts():
    assert is_plus_one_monoid(ALL).verdict == "yes"
    assert is_plus_one_monoid(ODD).verdict == "yes"
    assert is_plus_one_monoid(congruence(3)).verdict == "yes"
    assert is_plus_one_monoid(EVEN).witness == (1,)
    assert is_plus_one_monoid(atleast(2)).verdict == "no"
    res = is_plus_one_monoid(explicit(1, 3, 8), bound=10)
    assert res.verdict == "no" and res.witness == (3, 3)
    res = is_plus_one_monoid(explicit(1), bound=10)
    assert res.verdict == "yes-up-to-bound" and res.accept(True) and not res.accept()


@pytest.mark.parametrize("S", [ALL, ODD, congruence(2), congruence(3), congruence(5)])
def test_closed_families_agree_with_bounded_check(S):
    from srstirling.indexset import _bounded_monoid_check
    assert _bounded_monoid_check(S, 40).verdict == "yes-up-to-bound"


@pytest.mark.parametrize("S", [ALL, ODD, congruence(3), congruence(4)])
def test_module_property(S):
    # sums of l elements of S with l in S' stay in S'
    rng = random.Random(7)
    els = S.elements_up_to(30)
    Sd = S.derivative()
    for _ in range(200):
        ell = rng.choice([x for x in Sd.elements_up_to(6) if x >= 1] or [1])
        if not Sd.contains(ell):
            continue
        total = sum(rng.choice(els) for _ in range(ell))
        assert Sd.contains(total)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([ALL, ODD, congruence(3), congruence(5)]), st.integers(0, 40), st.integers(0, 40))
def test_derived_set_closed_under_addition(S, a, b):
    Sd = S.derivative()
    if Sd.contains(a) and Sd.contains(b):
        assert Sd.contains(a + b)


def test_series_helpers():
    N = 9
    assert egf_E(ALL, N) == exp_x(N) - 1
    assert egf_E(ODD, N) == sinh_x(N)
    assert egf_E_derived(ODD, N) == cosh_x(N)
    assert egf_F(ALL, N) == egf_F(ALL, N).alternate().scale(-1).alternate().scale(-1)
    assert list(ogf_shifted(explicit(1, 3), 4)) == [1, 0, 1, 0, 0]
