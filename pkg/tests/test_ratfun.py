from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burauwalk.errors import DomainError
from burauwalk.ratfun import (
    ONE,
    T,
    TBAR,
    ZERO,
    HSeries,
    LaurentPoly,
    RatFun,
    eval_at,
    expand_h,
    kleene_star,
    parse_t0,
    ratfun_arith,
)

small = st.integers(-4, 4)
laurent = st.dictionaries(st.integers(-3, 3), small, max_size=4).map(LaurentPoly)
nonzero_laurent = laurent.filter(lambda p: not p.is_zero())
ratfuns = st.builds(RatFun, laurent, nonzero_laurent)
nonzero_ratfuns = ratfuns.filter(lambda f: not f.is_zero())


def test_canonical_form_moves_powers_of_t_into_numerator():
    f = RatFun(LaurentPoly({0: 1}), LaurentPoly({1: 2, 2: -1}))  # 1 / (2t - t^2)
    assert f.den.low == 0 and f.den.dense[0] > 0
    assert f.num == LaurentPoly({-1: 1})
    assert str(f) == "(t^-1)/(2 - t)"


def test_canonical_form_reduces_common_factors():
    one_minus_t = LaurentPoly({0: 1, 1: -1})
    f = RatFun(one_minus_t * one_minus_t, one_minus_t * LaurentPoly({0: 2, 1: -1}))
    assert f == RatFun(one_minus_t, LaurentPoly({0: 2, 1: -1}))
    assert str(f) == "(1 - t)/(2 - t)"


def test_denominator_sign_normalised():
    f = RatFun(1, LaurentPoly({0: -1, 1: 1}))
    assert f.den.dense[0] > 0
    assert str(f) == "(-1)/(1 - t)"


@pytest.mark.parametrize(
    "value, text",
    [(ZERO, "0"), (ONE, "1"), (T, "t"), (TBAR, "t^-1"), (ONE - T, "1 - t"), (ONE - TBAR, "-t^-1 + 1")],
)
def test_rendering(value, text):
    assert str(value) == text


def test_rational_constants():
    assert str(RatFun(Fraction(1, 2))) == "(1)/(2)"
    assert RatFun(Fraction(1, 2)) * 2 == ONE


def test_t_tbar_inverse():
    assert T * TBAR == ONE
    assert T.reciprocal() == TBAR
    assert T.invert_variable() == TBAR


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(ratfuns, ratfuns, ratfuns)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(nonzero_ratfuns, ratfuns)
@settings(max_examples=60, deadline=None)
def test_division_inverts_multiplication(a, b):
    assert (b / a) * a == b
    assert a * a.reciprocal() == ONE


@given(ratfuns)
@settings(max_examples=60, deadline=None)
def test_canonical_form_is_unique(f):
    g = RatFun(f.num * LaurentPoly({1: 3, 2: -3}), f.den * LaurentPoly({1: 3, 2: -3}))
    assert g == f and hash(g) == hash(f) and str(g) == str(f)
    assert f.den.low == 0 and f.den.dense[0] > 0


@given(ratfuns, st.fractions(Fraction(1, 10), Fraction(9, 10)))
@settings(max_examples=60, deadline=None)
def test_invert_variable_matches_evaluation(f, x):
    try:
        lhs = eval_at(f.invert_variable(), x)
        rhs = eval_at(f, 1 / x)
    except DomainError:
        return
    assert lhs == rhs


@given(ratfuns, ratfuns, st.fractions(Fraction(1, 7), Fraction(6, 7)))
@settings(max_examples=60, deadline=None)
def test_evaluation_is_a_homomorphism(a, b, x):
    try:
        ea, eb = eval_at(a, x), eval_at(b, x)
    except DomainError:
        return
    assert eval_at(a * b, x) == ea * eb
    assert eval_at(a + b, x) == ea + eb


def test_ratfun_arith():
    assert ratfun_arith(T, TBAR, "mul") == ONE
    assert ratfun_arith(T, ONE, "sub") == T - 1
    with pytest.raises(ValueError):
        ratfun_arith(T, ONE, "^")


def test_eval_at_poles():
    f = ONE / (ONE - T)
    with pytest.raises(DomainError):
        eval_at(f, 1)
    with pytest.raises(DomainError):
        eval_at(TBAR, 0)
    assert eval_at(f, Fraction(1, 2)) == 2
    assert eval_at(f, 0.5) == pytest.approx(2.0)
    assert isinstance(eval_at(f, Fraction(1, 2), exact=False), float)


def test_parse_t0():
    assert parse_t0("1/2") == Fraction(1, 2)
    assert isinstance(parse_t0("0.25"), float)
    assert parse_t0(1) == Fraction(1)
    with pytest.raises(DomainError):
        parse_t0("half")


def test_kleene_star_of_loop_weight():
    assert kleene_star(T * (ONE - TBAR)) == ONE / (2 - T)
    assert str(kleene_star(T * (ONE - TBAR))) == "(1)/(2 - t)"


def test_kleene_star_of_negative_kink_loop():
    # t-bar times the closure of the kink loop is the identity weight
    assert TBAR * kleene_star(ONE - TBAR) == ONE


def test_kleene_star_rejects_non_vanishing_weight():
    with pytest.raises(DomainError):
        kleene_star(T)
    assert kleene_star(ZERO) == ONE


def test_expand_h_basic():
    # t = 1 - h, t^-1 = 1 + h + h^2 + ...
    assert expand_h(T, 3) == HSeries([1, -1, 0])
    assert expand_h(TBAR, 4) == HSeries([1, 1, 1, 1])
    assert expand_h(ONE / (2 - T), 4) == HSeries([1, -1, 1, -1])


def test_expand_h_pole_at_one():
    with pytest.raises(DomainError):
        expand_h(ONE / (ONE - T), 3)


@given(ratfuns, ratfuns)
@settings(max_examples=60, deadline=None)
def test_expand_h_is_a_ring_map(a, b):
    try:
        ea, eb = expand_h(a, 5), expand_h(b, 5)
    except DomainError:
        return
    assert expand_h(a * b, 5) == ea * eb
    assert expand_h(a - b, 5) == ea - eb


def test_hseries_inverse_and_valuation():
    s = HSeries([1, 2, 0, 5])
    assert s * s.inverse() == HSeries.constant(1, 4)
    assert HSeries([0, 0, 3, 1]).valuation() == 2
    with pytest.raises(ValueError):
        HSeries([1, 0]) + HSeries([1, 0, 0])


def test_laurent_negative_power_only_for_monomials():
    assert LaurentPoly({2: 1}) ** -1 == LaurentPoly({-2: 1})
    with pytest.raises((ValueError, DomainError, ZeroDivisionError)):
        LaurentPoly({0: 1, 1: 1}) ** -1
