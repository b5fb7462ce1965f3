#!/usr/bin/env python3
"""
Q-SYMMETRY q-Euler Polynomials
q-numbers, classical order-r Euler polynomials and higher-order q-Euler
numbers/polynomials as exact rational functions of q

Two independent constructions of E_{n,q}^{(r)}(x) are provided:
- the closed form (1/(1-q)^n) sum_l C(n,l) (-1)^l q^{lx} (2/(1+q^l))^r
- the binomial recurrence sum_l C(n,l) q^{lx} E_{l,q}^{(r)} [x]_q^{n-l}

The generating series itself is only a formal object and is never summed.

Author: Q-SYMMETRY Project
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import List, Sequence, Tuple

from exact import (
    Poly, RatFunc, InvalidInputError, PoleError, ONE_POLY, ZERO,
    series_mul, series_reciprocal,
)
from qeuler_cache import QEulerTable, table_from_environment

# Setup logging
logger = logging.getLogger('qsym-qeuler')

# Configuration
_default_table = table_from_environment()


def _require_int(name: str, value, minimum: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise InvalidInputError(f"{name} must be an integer >= {minimum}, got {value!r}")


@dataclass(frozen=True)
class QEulerKey:
    """E_{n,Q}^{(r)}(a/w) with Q = q^w; w = 1 is plain E_{n,q}^{(r)}(a)"""
    n: int
    r: int
    a: int = 0
    w: int = 1

    def __post_init__(self):
        _require_int('n', self.n, 0)
        _require_int('r', self.r, 1)
        _require_int('a', self.a, 0)
        _require_int('w', self.w, 1)


def get_table() -> QEulerTable:
    return _default_table


def _degenerates_to_classical(n: int, r: int, value: RatFunc) -> bool:
    try:
        return value.evaluate(1) == classical_euler_numbers(n, r)[n]
    except (PoleError, InvalidInputError):
        return False


def set_table(table: QEulerTable) -> None:
    """Swap the memo table (e.g. for a persistent cache file)

    Entries whose q -> 1 value is not the classical Euler number are dropped,
    and so is everything memoized from the previous table.
    """
    global _default_table
    table.prune(_degenerates_to_classical)
    _default_table = table
    q_euler_number_at_power.cache_clear()
    q_euler_poly.cache_clear()


def q_int(m: int) -> Poly:
    """[m]_q = 1 + q + ... + q^{m-1}"""
    _require_int('m', m, 0)
    return Poly([1] * m)


def q_number_expansion(a: int, b: int) -> Tuple[Poly, Poly]:
    """([a]_q, q^a) so that [a+b]_q = [a]_q + q^a [b]_q"""
    _require_int('a', a, 0)
    _require_int('b', b, 0)
    return q_int(a), Poly.monomial(a)


@lru_cache(maxsize=1024)
def q_frac(a: int, w: int) -> RatFunc:
    """[a/w]_{q^w} = (1-q^a)/(1-q^w) in canonical form"""
    _require_int('a', a, 0)
    _require_int('w', w, 1)
    if a == 0:
        return ZERO
    g = gcd(a, w)
    # (1-q^a)/(1-q^w) = [a/g]_{q^g} / [w/g]_{q^g} after removing 1-q^g
    return RatFunc(q_int(a // g).subst_power(g), q_int(w // g).subst_power(g))


def classical_euler_numbers(n_max: int, r: int) -> List[Fraction]:
    """E_0^{(r)} .. E_{n_max}^{(r)} from the series (2/(e^t+1))^r"""
    _require_int('n_max', n_max, 0)
    _require_int('r', r, 1)
    # (e^t + 1)/2 = 1 + t/2 + t^2/(2*2!) + ...
    half_shift = Poly([Fraction(1)] + [Fraction(1, 2 * factorial(k)) for k in range(1, n_max + 1)])
    base = series_reciprocal(half_shift, n_max)
    power = ONE_POLY
    for _ in range(r):
        power = series_mul(power, base, n_max)
    coeffs = power.coefficients
    return [
        (coeffs[k] if k < len(coeffs) else Fraction(0)) * factorial(k)
        for k in range(n_max + 1)
    ]


def classical_euler_poly(n: int, r: int) -> Poly:
    """E_n^{(r)}(x) = sum_l C(n,l) E_l^{(r)} x^{n-l}, as a Poly in x"""
    numbers = classical_euler_numbers(n, r)
    return Poly([comb(n, n - k) * numbers[n - k] for k in range(n + 1)])


def _closed_form(n: int, r: int, weighted: Sequence[Tuple[int, int]], w: int = 1) -> RatFunc:
    """sum_k c_k E_{n,q^w}^{(r)}(a_k/w) for (a_k, c_k) in weighted

    The k-sum is folded into one numerator per l, so only the n+1
    denominators (1+q^{wl})^r are ever combined.
    """
    terms = []
    for l in range(n + 1):
        scale = comb(n, l) * (-1) ** l * 2 ** r
        dense = [0] * (l * max(a for a, _ in weighted) + 1)
        for a, c in weighted:
            dense[l * a] += c * scale
        terms.append((Poly(dense), (ONE_POLY + Poly.monomial(w * l)) ** r))
    alternating = RatFunc.from_terms(terms)
    return RatFunc(alternating.num, alternating.den * (ONE_POLY - Poly.monomial(w)) ** n)


def _compute_q_euler_number(n: int, r: int) -> RatFunc:
    value = _closed_form(n, r, [(0, 1)])
    logger.debug(f"🧮 E_{{{n},q}}^({r}) = {value}")
    return value


def q_euler_number(n: int, r: int) -> RatFunc:
    """E_{n,q}^{(r)}, summing l = 0..n (the l = 0 term is 1)"""
    _require_int('n', n, 0)
    _require_int('r', r, 1)
    return _default_table.lookup(n, r, _compute_q_euler_number)


def q_euler_poly_closed_form(n: int, r: int, a: int, w: int = 1) -> RatFunc:
    """Closed form of E_{n,q^w}^{(r)}(a/w) carrying the q^{la} factor"""
    _require_int('n', n, 0)
    _require_int('r', r, 1)
    _require_int('a', a, 0)
    _require_int('w', w, 1)
    return _closed_form(n, r, [(a, 1)], w)


def q_euler_closed_form_sum(n: int, r: int, weighted: Sequence[Tuple[int, int]], w: int = 1) -> RatFunc:
    """sum_k c_k E_{n,q^w}^{(r)}(a_k/w) over (a_k, c_k) pairs, through one closed form"""
    _require_int('n', n, 0)
    _require_int('r', r, 1)
    _require_int('w', w, 1)
    weighted = list(weighted)
    if not weighted:
        return ZERO
    for a, c in weighted:
        _require_int('a', a, 0)
        if not isinstance(c, int) or isinstance(c, bool):
            raise InvalidInputError(f"weights must be integers, got {c!r}")
    return _closed_form(n, r, weighted, w)


@lru_cache(maxsize=512)
def q_euler_number_at_power(n: int, r: int, w: int) -> RatFunc:
    """E_{n,q^w}^{(r)}"""
    return q_euler_number(n, r).subst_power(w)


def q_euler_poly_terms(key: QEulerKey) -> List[Tuple[Poly, Poly]]:
    """Un-reduced (num, den) terms of the binomial expansion of E_{n,Q}^{(r)}(a/w)

    Term l is C(n,l) q^{la} E_{l,Q}^{(r)} [a/w]_Q^{n-l}; 0^0 = 1 for l = n.
    """
    frac = q_frac(key.a, key.w)
    terms = []
    for l in range(key.n + 1):
        shift = key.n - l
        if shift and frac.is_zero:
            continue
        number = q_euler_number_at_power(l, key.r, key.w)
        num = number.num * frac.num ** shift * Poly.monomial(l * key.a, comb(key.n, l))
        den = number.den * frac.den ** shift
        terms.append((num, den))
    return terms


@lru_cache(maxsize=4096)
def q_euler_poly(key: QEulerKey) -> RatFunc:
    """E_{n,Q}^{(r)}(a/w) with Q = q^w, as a rational function of q"""
    if key.a == 0:
        return q_euler_number_at_power(key.n, key.r, key.w)
    return RatFunc.from_terms(q_euler_poly_terms(key))


def clear_caches() -> None:
    """Drop every memoized value (the shared table and the lru caches)"""
    _default_table.clear()
    q_frac.cache_clear()
    q_euler_number_at_power.cache_clear()
    q_euler_poly.cache_clear()
