#!/usr/bin/env python3
"""
Q-SYMMETRY Exact Arithmetic
Rationals, polynomials in q and canonical rational functions

Everything downstream (q-numbers, q-Euler polynomials, alternating power
sums, identity reports) is an exact value built from three types:
- Rat: ``fractions.Fraction`` (always reduced, positive denominator)
- Poly: immutable dense polynomial over Rat, backed by ``sympy.Poly`` over QQ
- RatFunc: reduced num/den pair of Poly with a monic denominator

Two RatFunc values are equal iff their canonical forms are identical, so
identity checks are plain structural comparisons.

Author: Q-SYMMETRY Project
"""

import re
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from sympy import Poly as SymPoly, QQ, Symbol
from sympy.polys.polyerrors import ExactQuotientFailed

# Setup logging
logger = logging.getLogger('qsym-exact')

Rat = Fraction
Scalar = Union[int, Fraction]

# Configuration
DEFAULT_VARIABLE = 'q'
_GENERATOR = Symbol('q')
_TERM_PATTERN = re.compile(r'[+-]?[^+-]+')


class ExactArithmeticError(ValueError):
    """Base class for every error raised by the exact layer"""


class InvalidInputError(ExactArithmeticError):
    """Out-of-range arguments, zero denominators, malformed strings"""


class PoleError(ExactArithmeticError, ZeroDivisionError):
    """Evaluation hit a zero of the denominator"""

    def __init__(self, point, message: str = None):
        self.point = point
        super().__init__(message or f"pole at q = {point}")


def as_rat(value) -> Fraction:
    """Coerce int / Fraction / 'a/b' string to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational number: {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"not a rational number: {value!r}") from e


def _to_domain(value: Fraction):
    return QQ(value.numerator, value.denominator)


class Poly:
    """Univariate polynomial over the rationals

    Coefficients are indexed by exponent, lowest first. The zero polynomial
    has the empty coefficient tuple and degree -1.
    """

    __slots__ = ('_rep', '_coeffs')

    def __init__(self, coefficients: Sequence = ()):
        coeffs = [as_rat(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        dense = [_to_domain(c) for c in reversed(coeffs)] or [QQ(0)]
        self._rep = SymPoly.from_list(dense, _GENERATOR, domain=QQ)
        self._coeffs = tuple(coeffs)

    @classmethod
    def _wrap(cls, rep: SymPoly) -> 'Poly':
        poly = cls.__new__(cls)
        poly._rep = rep
        poly._coeffs = None
        return poly

    @classmethod
    def constant(cls, value: Scalar) -> 'Poly':
        return cls((value,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: Scalar = 1) -> 'Poly':
        if exponent < 0:
            raise InvalidInputError(f"negative exponent: {exponent}")
        return cls([0] * exponent + [coefficient])

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        if self._coeffs is None:
            coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(self._rep.all_coeffs())]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            self._coeffs = tuple(coeffs)
        return self._coeffs

    @property
    def degree(self) -> int:
        return -1 if self._rep.is_zero else self._rep.degree()

    @property
    def is_zero(self) -> bool:
        return self._rep.is_zero

    @property
    def leading_coefficient(self) -> Fraction:
        if self._rep.is_zero:
            return Fraction(0)
        c = self._rep.LC()
        return Fraction(int(c.p), int(c.q))

    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._wrap(self._rep + other._rep)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._wrap(self._rep - other._rep)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._wrap(other._rep - self._rep)

    def __neg__(self):
        return Poly._wrap(-self._rep)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._wrap(self._rep * other._rep)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise InvalidInputError(f"polynomial exponent must be a nonnegative integer, got {exponent!r}")
        return Poly._wrap(self._rep ** exponent)

    def scale(self, factor: Scalar) -> 'Poly':
        """Multiply every coefficient by a rational factor"""
        return Poly._wrap(self._rep.mul_ground(_to_domain(as_rat(factor))))

    def divmod(self, other: 'Poly') -> Tuple['Poly', 'Poly']:
        if other.is_zero:
            raise InvalidInputError("polynomial division by zero")
        quotient, remainder = self._rep.div(other._rep)
        return Poly._wrap(quotient), Poly._wrap(remainder)

    def __floordiv__(self, other: 'Poly') -> 'Poly':
        return self.divmod(other)[0]

    def __mod__(self, other: 'Poly') -> 'Poly':
        return self.divmod(other)[1]

    def exquo(self, other: 'Poly') -> 'Poly':
        """Exact quotient; raises InvalidInputError when other does not divide self"""
        if other.is_zero:
            raise InvalidInputError("polynomial division by zero")
        try:
            return Poly._wrap(self._rep.exquo(other._rep))
        except ExactQuotientFailed as e:
            raise InvalidInputError(f"{other} does not divide {self}") from e

    def gcd(self, other: 'Poly') -> 'Poly':
        """Monic greatest common divisor (zero only when both inputs are zero)"""
        if self.is_zero and other.is_zero:
            return ZERO_POLY
        if self.degree == 0 or other.degree == 0:
            return ONE_POLY
        result = Poly._wrap(self._rep.gcd(other._rep))
        lead = result.leading_coefficient
        return result if lead == 1 else result.scale(1 / lead)

    def lcm(self, other: 'Poly') -> 'Poly':
        """Monic least common multiple of two nonzero polynomials"""
        if self == other or other.degree <= 0:
            result = self
        elif self.degree <= 0:
            result = other
        else:
            result = self * other.exquo(self.gcd(other))
        lead = result.leading_coefficient
        return result if lead == 1 else result.scale(1 / lead)

    def evaluate(self, point: Scalar) -> Fraction:
        """Exact value at a rational point (Horner)"""
        point = as_rat(point)
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * point + c
        return value

    def subst_power(self, k: int) -> 'Poly':
        """Replace q by q^k"""
        if not isinstance(k, int) or k < 1:
            raise InvalidInputError(f"substitution power must be a positive integer, got {k!r}")
        if k == 1 or self.degree <= 0:
            return self
        spread = [0] * (self.degree * k + 1)
        for i, c in enumerate(self.coefficients):
            spread[i * k] = c
        return Poly(spread)

    def render(self, var: str = DEFAULT_VARIABLE) -> str:
        """Canonical ASCII rendering, ascending exponents: '1-q+1/2*q^3'"""
        pieces: List[str] = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                power = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    term = power
                elif c == -1:
                    term = f"-{power}"
                else:
                    term = f"{c}*{power}"
            if pieces and not term.startswith('-'):
                term = '+' + term
            pieces.append(term)
        return ''.join(pieces) or '0'

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.render()!r})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._rep == other._rep

    def __hash__(self):
        return hash(self._rep)


ZERO_POLY = Poly(())
ONE_POLY = Poly((1,))
Q = Poly((0, 1))


def parse_poly(text: str, var: str = DEFAULT_VARIABLE) -> Poly:
    """Parse the canonical rendering back into a Poly"""
    compact = re.sub(r'\s+', '', text or '')
    if not compact:
        raise InvalidInputError("empty polynomial string")
    coefficients: Dict[int, Fraction] = {}
    for term in _TERM_PATTERN.findall(compact):
        sign = -1 if term.startswith('-') else 1
        body = term.lstrip('+-')
        if '*' in body:
            coeff_text, power_text = body.split('*', 1)
        elif body.startswith(var):
            coeff_text, power_text = '1', body
        else:
            coeff_text, power_text = body, ''
        if power_text == '':
            exponent = 0
        elif power_text == var:
            exponent = 1
        elif power_text.startswith(f"{var}^") and power_text[len(var) + 1:].isdigit():
            exponent = int(power_text[len(var) + 1:])
        else:
            raise InvalidInputError(f"malformed term {term!r} in {text!r}")
        coefficients[exponent] = coefficients.get(exponent, Fraction(0)) + sign * as_rat(coeff_text)
    if not coefficients:
        raise InvalidInputError(f"malformed polynomial {text!r}")
    dense = [Fraction(0)] * (max(coefficients) + 1)
    for exponent, c in coefficients.items():
        dense[exponent] = c
    return Poly(dense)


def _canonical_pair(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if den.is_zero:
        raise InvalidInputError("zero denominator")
    if num.is_zero:
        return ZERO_POLY, ONE_POLY
    common = num.gcd(den)
    if common.degree > 0:
        num = num.exquo(common)
        den = den.exquo(common)
    lead = den.leading_coefficient
    if lead != 1:
        num = num.scale(1 / lead)
        den = den.scale(1 / lead)
    return num, den


class RatFunc:
    """Canonical rational function num/den in q

    gcd(num, den) = 1, den is monic, zero is 0/1. Instances are immutable and
    always canonical, so == and hash work on the pair of coefficient tuples.
    """

    __slots__ = ('num', 'den')

    def __init__(self, num: Union[Poly, Scalar] = 0, den: Union[Poly, Scalar] = 1):
        num = num if isinstance(num, Poly) else Poly.constant(num)
        den = den if isinstance(den, Poly) else Poly.constant(den)
        self.num, self.den = _canonical_pair(num, den)

    @classmethod
    def _from_canonical(cls, num: Poly, den: Poly) -> 'RatFunc':
        value = cls.__new__(cls)
        value.num = num
        value.den = den
        return value

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Poly, Poly]]) -> 'RatFunc':
        """Sum of num_i/den_i, canonicalized once

        Terms sharing a denominator are added first; distinct denominators
        are then merged by lcm.
        """
        grouped: Dict[Poly, Poly] = {}
        for num, den in terms:
            if den.is_zero:
                raise InvalidInputError("zero denominator in sum")
            if num.is_zero:
                continue
            grouped[den] = grouped[den] + num if den in grouped else num
        if not grouped:
            return ZERO
        common = ONE_POLY
        for den in grouped:
            common = common.lcm(den)
        total = ZERO_POLY
        for den, num in grouped.items():
            total = total + (num if den == common else num * common.exquo(den))
        return cls(total, common)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc._from_canonical(other, ONE_POLY)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatFunc._from_canonical(Poly.constant(other), ONE_POLY)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc.from_terms([(self.num, self.den), (other.num, other.den)])

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._from_canonical(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return ZERO
        # cross-cancellation keeps the product canonical without a full gcd
        left = self.num.gcd(other.den)
        right = other.num.gcd(self.den)
        num_a = self.num if left.degree <= 0 else self.num.exquo(left)
        den_b = other.den if left.degree <= 0 else other.den.exquo(left)
        num_b = other.num if right.degree <= 0 else other.num.exquo(right)
        den_a = self.den if right.degree <= 0 else self.den.exquo(right)
        return RatFunc._from_canonical(num_a * num_b, den_a * den_b)

    __rmul__ = __mul__

    def reciprocal(self) -> 'RatFunc':
        if self.is_zero:
            raise InvalidInputError("reciprocal of zero")
        lead = self.num.leading_coefficient
        return RatFunc._from_canonical(self.den.scale(1 / lead), self.num.scale(1 / lead))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.reciprocal()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise InvalidInputError(f"exponent must be an integer, got {exponent!r}")
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        # powers of coprime polynomials stay coprime, monic stays monic
        return RatFunc._from_canonical(self.num ** exponent, self.den ** exponent)

    def evaluate(self, point: Scalar) -> Fraction:
        point = as_rat(point)
        den_value = self.den.evaluate(point)
        if den_value == 0:
            raise PoleError(point)
        return self.num.evaluate(point) / den_value

    def subst_power(self, k: int) -> 'RatFunc':
        # q -> q^k maps coprime pairs to coprime pairs and keeps leading coefficients
        return RatFunc._from_canonical(self.num.subst_power(k), self.den.subst_power(k))

    def render(self) -> str:
        if self.is_polynomial:
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatFunc({self.render()!r})"

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))


ZERO = RatFunc._from_canonical(ZERO_POLY, ONE_POLY)
ONE = RatFunc._from_canonical(ONE_POLY, ONE_POLY)


def parse_ratfunc(text: str) -> RatFunc:
    """Parse '(num)/(den)' or a bare polynomial"""
    compact = re.sub(r'\s+', '', text or '')
    if compact.startswith('(') and compact.endswith(')') and ')/(' in compact:
        num_text, den_text = compact[1:-1].split(')/(', 1)
        return RatFunc(parse_poly(num_text), parse_poly(den_text))
    return RatFunc(parse_poly(compact))


def ratfunc_canonicalize(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def ratfunc_from_terms(pairs: Iterable[Tuple[Poly, Poly]]) -> RatFunc:
    return RatFunc.from_terms(pairs)


def ratfunc_eval(f: RatFunc, q0: Scalar) -> Fraction:
    return f.evaluate(q0)


def ratfunc_eval_at_one(f: RatFunc) -> Fraction:
    """Value at q = 1 of the canonical form (the q -> 1 degeneration)"""
    return f.evaluate(1)


def ratfunc_subst_power(f: RatFunc, k: int) -> RatFunc:
    return f.subst_power(k)


# Truncated power series (coefficient lists of Poly, variable t)

def series_mul(a: Poly, b: Poly, order: int) -> Poly:
    """Product of two series keeping t^0 .. t^order"""
    ca, cb = a.coefficients, b.coefficients
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(ca[:order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(cb[:order + 1 - i]):
            out[i + j] += x * y
    return Poly(out)


def series_reciprocal(p: Poly, order: int) -> Poly:
    """1/p as a series up to t^order; p must have a nonzero constant term"""
    coeffs = p.coefficients
    if not coeffs or coeffs[0] == 0:
        raise InvalidInputError("series reciprocal needs a nonzero constant term")
    inverse_head = 1 / coeffs[0]
    out = [inverse_head]
    for k in range(1, order + 1):
        acc = sum((coeffs[j] * out[k - j] for j in range(1, min(k, len(coeffs) - 1) + 1)), Fraction(0))
        out.append(-inverse_head * acc)
    return Poly(out)
