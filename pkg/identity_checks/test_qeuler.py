#!/usr/bin/env python3
"""
Tests for q-numbers, classical Euler polynomials and q-Euler polynomials
"""

import itertools
import sys
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

# Add identity_checks to path
sys.path.append(str(Path(__file__).parent))

from exact import ONE, InvalidInputError, Poly, RatFunc, ZERO, ratfunc_eval_at_one, ratfunc_from_terms
from qeuler import (
    QEulerKey, classical_euler_numbers, classical_euler_poly, q_euler_number,
    q_euler_closed_form_sum, q_euler_poly, q_euler_poly_closed_form, q_euler_poly_terms, q_frac, q_int,
    q_number_expansion,
)


def test_q_int():
    assert q_int(0).is_zero
    assert q_int(1) == Poly([1])
    assert q_int(3) == Poly([1, 1, 1])
    assert q_int(4).evaluate(1) == 4
    with pytest.raises(InvalidInputError):
        q_int(-1)


@pytest.mark.parametrize("a, b", list(itertools.product(range(9), repeat=2)))
def test_q_number_expansion(a, b):
    head, shift = q_number_expansion(a, b)
    assert head + shift * q_int(b) == q_int(a + b)


@pytest.mark.parametrize("a, w", [(0, 1), (1, 1), (3, 1), (2, 3), (3, 3), (6, 9), (10, 4)])
def test_q_frac(a, w):
    expected = RatFunc(Poly.monomial(0) - Poly.monomial(a), Poly.monomial(0) - Poly.monomial(w))
    assert q_frac(a, w) == expected


def test_q_frac_integer_argument():
    # [a]_{q^w} evaluated at a*w/w is the plain q-number in q^w
    assert q_frac(6, 3) == RatFunc(q_int(2).subst_power(3))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_classical_euler_numbers_against_series(r):
    n_max = 6
    t = sympy.Symbol('t')
    expansion = sympy.series((2 / (sympy.exp(t) + 1)) ** r, t, 0, n_max + 1).removeO()
    numbers = classical_euler_numbers(n_max, r)
    for k in range(n_max + 1):
        c = sympy.Rational(expansion.coeff(t, k) * sympy.factorial(k))
        assert numbers[k] == Fraction(int(c.p), int(c.q))


def test_classical_spot_values():
    numbers = classical_euler_numbers(3, 1)
    assert numbers == [1, Fraction(-1, 2), 0, Fraction(1, 4)]
    assert classical_euler_poly(1, 1) == Poly([Fraction(-1, 2), 1])
    assert classical_euler_poly(3, 1).evaluate(0) == Fraction(1, 4)


def test_q_euler_number_small_values():
    for r in (1, 2, 5):
        assert q_euler_number(0, r) == ONE
    assert q_euler_number(1, 1) == RatFunc(-1, Poly([1, 1]))
    assert q_euler_number(1, 1).render() == "(-1)/(1+q)"


def test_q_euler_key_validation():
    with pytest.raises(InvalidInputError):
        QEulerKey(-1, 1)
    with pytest.raises(InvalidInputError):
        QEulerKey(1, 0)
    with pytest.raises(InvalidInputError):
        QEulerKey(1, 1, a=-2)
    with pytest.raises(InvalidInputError):
        QEulerKey(1, 1, w=0)


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("r", [1, 2, 3])
def test_degenerates_to_classical(n, r):
    classical = classical_euler_poly(n, r)
    for x in range(5):
        assert ratfunc_eval_at_one(q_euler_poly(QEulerKey(n, r, x, 1))) == classical.evaluate(x)


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("r", [1, 2, 3])
def test_closed_form_matches_recurrence(n, r):
    for x in range(6):
        assert q_euler_poly_closed_form(n, r, x) == q_euler_poly(QEulerKey(n, r, x, 1))


def test_closed_form_at_zero_is_the_number():
    for n in range(5):
        assert q_euler_poly_closed_form(n, 2, 0) == q_euler_number(n, 2)


@pytest.mark.parametrize("n, r, a, w", [(2, 1, 1, 3), (3, 2, 4, 3), (4, 1, 0, 5), (1, 3, 7, 5)])
def test_terms_sum_to_polynomial(n, r, a, w):
    assert ratfunc_from_terms(q_euler_poly_terms(QEulerKey(n, r, a, w))) == q_euler_poly(QEulerKey(n, r, a, w))


@pytest.mark.parametrize("w", [1, 3, 5])
def test_integer_argument_in_q_power(w):
    # E_{n,q^w}(a) with an integer argument is E_{n,q}(a) with q -> q^w
    for n in range(4):
        for a in range(3):
            expected = q_euler_poly(QEulerKey(n, 2, a, 1)).subst_power(w)
            assert q_euler_poly(QEulerKey(n, 2, a * w, w)) == expected


def test_q_euler_poly_zero_shift():
    assert q_euler_poly(QEulerKey(3, 1, 0, 3)) == q_euler_number(3, 1).subst_power(3)
    assert q_euler_poly(QEulerKey(0, 2, 5, 3)) == ONE
    assert q_euler_poly(QEulerKey(2, 1, 0, 1)) != ZERO


def test_q_euler_poly_small_arguments():
    assert q_euler_poly(QEulerKey(1, 1, 1, 1)) == RatFunc(1, Poly([1, 1]))
    expected = RatFunc(1, Poly([1, 1, 1])) - RatFunc(Poly([0, 1]), Poly([1, 0, 0, 1]))
    assert q_euler_poly(QEulerKey(1, 1, 1, 3)) == expected


@pytest.mark.parametrize("w1", [1, 3, 5])
@pytest.mark.parametrize("w2", [1, 3, 5])
def test_q_number_scaling_law(w1, w2):
    for s in range(7):
        left = q_frac(w2 * s, w1) * RatFunc(q_int(w1))
        right = RatFunc(q_int(s).subst_power(w2)) * RatFunc(q_int(w2))
        assert left == right


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("r", [1, 2])
def test_q_euler_number_denominator(n, r):
    value = q_euler_number(n, r)
    assert value.den.evaluate(1) != 0
    bound = Poly([1])
    for l in range(1, n + 1):
        bound = bound * (Poly([1]) + Poly.monomial(l)) ** r
    bound.exquo(value.den)
    assert ratfunc_eval_at_one(value) == classical_euler_numbers(n, r)[n]


@pytest.mark.parametrize("w", [3, 5])
@pytest.mark.parametrize("r", [1, 2])
def test_closed_form_in_q_power_matches_recurrence(w, r):
    for n in range(4):
        for a in (0, 1, 2, 4, 7):
            assert q_euler_poly_closed_form(n, r, a, w) == q_euler_poly(QEulerKey(n, r, a, w))


def test_closed_form_sum_is_linear():
    weighted = [(5, 1), (8, -2), (11, 1)]
    expected = sum(
        (q_euler_poly(QEulerKey(3, 2, a, 3)) * c for a, c in weighted),
        ZERO,
    )
    assert q_euler_closed_form_sum(3, 2, weighted, 3) == expected
    assert q_euler_closed_form_sum(2, 1, [], 3) == ZERO
    with pytest.raises(InvalidInputError):
        q_euler_closed_form_sum(2, 1, [(-1, 1)], 3)
    with pytest.raises(InvalidInputError):
        q_euler_closed_form_sum(2, 1, [(1, Fraction(1, 2))], 3)
