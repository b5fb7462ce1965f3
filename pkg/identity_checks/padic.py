#!/usr/bin/env python3
"""
Q-SYMMETRY p-adic Integrals
Fixed-precision p-adic integers and truncated fermionic p-adic integrals

The fermionic integral of f over Z_p is the limit of the alternating
Riemann sums sum_{x < p^N} f(x) (-1)^x. Level-N sums are computed exactly
(as rationals) and only then reduced mod p^N, so defect valuations are
measured on exact differences and are never capped at N.

For r-fold integrals of functions of y_1 + ... + y_r the sum is collapsed
over s = y_1 + ... + y_r using the number of tuples with that sum.

Author: Q-SYMMETRY Project
"""

import math
import logging
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Callable, List, Optional, Sequence, Union

from sympy import isprime, multiplicity

from exact import ExactArithmeticError, InvalidInputError, Poly, as_rat
from qeuler import QEulerKey, classical_euler_poly, q_euler_poly

# Setup logging
logger = logging.getLogger('qsym-padic')

# Configuration
BRUTE_FORCE_LIMIT = 10 ** 5
DEFECT_SLACK = 2
DEFAULT_N_MAX = 5

INFINITY = math.inf
Valuation = Union[int, float]


class NotPadicIntegerError(ExactArithmeticError):
    """A rational whose denominator is divisible by p"""

    def __init__(self, value, prime: int):
        self.value = value
        self.prime = prime
        super().__init__(f"{value} is not a {prime}-adic integer")


def require_odd_prime(p) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or p == 2 or not isprime(p):
        raise InvalidInputError(f"p must be an odd prime, got {p!r}")


def _require_level(N) -> None:
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise InvalidInputError(f"precision N must be an integer >= 1, got {N!r}")


def valuation(x, p: int) -> Valuation:
    """v_p of a rational number; infinity for zero"""
    x = as_rat(x)
    if x == 0:
        return INFINITY
    return int(multiplicity(p, abs(x.numerator))) - int(multiplicity(p, x.denominator))


@dataclass(frozen=True)
class PadicInt:
    """Residue mod p^N"""
    p: int
    N: int
    residue: int

    def __post_init__(self):
        require_odd_prime(self.p)
        _require_level(self.N)
        if not 0 <= self.residue < self.modulus:
            raise InvalidInputError(f"residue {self.residue} outside [0, {self.p}^{self.N})")

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    def _check(self, other: 'PadicInt') -> None:
        if (self.p, self.N) != (other.p, other.N):
            raise InvalidInputError(
                f"precision mismatch: ({self.p}, {self.N}) vs ({other.p}, {other.N})"
            )

    def __add__(self, other: 'PadicInt') -> 'PadicInt':
        self._check(other)
        return PadicInt(self.p, self.N, (self.residue + other.residue) % self.modulus)

    def __sub__(self, other: 'PadicInt') -> 'PadicInt':
        self._check(other)
        return PadicInt(self.p, self.N, (self.residue - other.residue) % self.modulus)

    def __mul__(self, other: 'PadicInt') -> 'PadicInt':
        self._check(other)
        return PadicInt(self.p, self.N, (self.residue * other.residue) % self.modulus)

    def __neg__(self) -> 'PadicInt':
        return PadicInt(self.p, self.N, (-self.residue) % self.modulus)

    def valuation(self) -> Valuation:
        """v_p of the residue; infinity when it is 0 mod p^N"""
        return INFINITY if self.residue == 0 else int(multiplicity(self.p, self.residue))

    def __str__(self):
        return str(self.residue)


def padic_reduce(x, p: int, N: int) -> PadicInt:
    """numerator * denominator^{-1} mod p^N"""
    require_odd_prime(p)
    _require_level(N)
    x = as_rat(x)
    if x.denominator % p == 0:
        raise NotPadicIntegerError(x, p)
    modulus = p ** N
    return PadicInt(p, N, x.numerator * pow(x.denominator, -1, modulus) % modulus)


@dataclass(frozen=True)
class IntegralConfig:
    """Prime, highest level and the p-adic q (|1-q0|_p < 1; default 1+p)"""
    p: int
    N_max: int = DEFAULT_N_MAX
    q0: Optional[Fraction] = field(default=None)

    def __post_init__(self):
        require_odd_prime(self.p)
        _require_level(self.N_max)
        q0 = Fraction(1 + self.p) if self.q0 is None else as_rat(self.q0)
        if q0.denominator % self.p == 0:
            raise NotPadicIntegerError(q0, self.p)
        if (q0.numerator - q0.denominator) % self.p != 0:
            raise InvalidInputError(f"q0 = {q0} must be congruent to 1 mod {self.p}")
        object.__setattr__(self, 'q0', q0)

    def check_level(self, N: int) -> None:
        _require_level(N)
        if N > self.N_max:
            raise InvalidInputError(f"level N = {N} exceeds N_max = {self.N_max}")


def fermionic_riemann_sum_exact(f: Callable[[int], Fraction], p: int, N: int) -> Fraction:
    """sum_{x=0}^{p^N-1} f(x) (-1)^x as an exact rational"""
    require_odd_prime(p)
    _require_level(N)
    total = Fraction(0)
    for x in range(p ** N):
        value = f(x)
        total += -value if x & 1 else value
    return total


def fermionic_riemann_sum(f: Callable[[int], Fraction], p: int, N: int) -> PadicInt:
    """Level-N truncation of the fermionic integral of f, reduced mod p^N"""
    return padic_reduce(fermionic_riemann_sum_exact(f, p, N), p, N)


def _as_integer_poly(f: Union[Poly, Sequence[int]]) -> Poly:
    poly = f if isinstance(f, Poly) else Poly(list(f))
    if any(c.denominator != 1 for c in poly.coefficients):
        raise InvalidInputError(f"{poly.render('x')} does not have integer coefficients")
    return poly


def shift_defect(f: Union[Poly, Sequence[int]], n: int, p: int, N: int) -> Valuation:
    """v_p of the level-N defect of the shift identity

    D = S_N(f(x+n)) + (-1)^{n-1} S_N(f) - 2 sum_{l<n} (-1)^{n-1-l} f(l),
    with v_p(D) >= N for integer-coefficient f.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"shift n must be an integer >= 1, got {n!r}")
    poly = _as_integer_poly(f)
    shifted = fermionic_riemann_sum_exact(lambda x: poly.evaluate(x + n), p, N)
    plain = fermionic_riemann_sum_exact(poly.evaluate, p, N)
    boundary = sum((-1) ** (n - 1 - l) * poly.evaluate(l) for l in range(n))
    defect = shifted + (-1) ** (n - 1) * plain - 2 * boundary
    logger.debug(f"🔍 shift defect f={poly.render('x')} n={n} p={p} N={N}: {defect}")
    return valuation(defect, p)


def tuple_count_by_sum(r: int, M: int) -> List[int]:
    """c(s) = #{y in [0, M)^r : sum y = s}, the coefficients of ((1-z^M)/(1-z))^r

    Each of the r convolutions with the all-ones kernel of length M is a
    sliding-window sum over prefix sums.
    """
    if not isinstance(r, int) or r < 1 or not isinstance(M, int) or M < 1:
        raise InvalidInputError(f"need r >= 1 and M >= 1, got r={r!r}, M={M!r}")
    counts = [1]
    for _ in range(r):
        prefix = [0] + list(accumulate(counts))
        size = len(counts) + M - 1
        counts = [
            prefix[min(s + 1, len(counts))] - prefix[max(0, s - M + 1)]
            for s in range(size)
        ]
    return counts


def q_number_values(q0, count: int) -> List[Union[int, Fraction]]:
    """Exact [E]_{q0} for E = 0 .. count-1 (plain ints when q0 is an integer)"""
    q0 = as_rat(q0)
    base = q0.numerator if q0.denominator == 1 else q0
    values = []
    acc, power = 0, 1
    for _ in range(count):
        values.append(acc)
        acc += power
        power *= base
    return values


def signed_power_sum(n: int, counts: Sequence[int], values: Sequence,
                     start: int = 0, stride: int = 1) -> Fraction:
    """sum_s (-1)^s c(s) values[start + stride*s]^n"""
    total = 0
    for s, c in enumerate(counts):
        term = c * values[start + stride * s] ** n
        total += -term if s & 1 else term
    return Fraction(total)


def multivariate_moment_exact(n: int, r: int, a: int, q0, p: int, N: int) -> Fraction:
    """Level-N sum of [a + y_1 + ... + y_r]_{q0}^n (-1)^{y_1+...+y_r}, exact"""
    require_odd_prime(p)
    _require_level(N)
    counts = tuple_count_by_sum(r, p ** N)
    values = q_number_values(q0, a + len(counts))
    return signed_power_sum(n, counts, values, start=a)


def multivariate_moment(n: int, r: int, a: int, cfg: IntegralConfig, N: int) -> PadicInt:
    """Level-N truncation of the r-fold fermionic integral of [a + y_1 + ... + y_r]_q^n"""
    cfg.check_level(N)
    return padic_reduce(multivariate_moment_exact(n, r, a, cfg.q0, cfg.p, N), cfg.p, N)


def multivariate_moment_brute_force(n: int, r: int, a: int, q0, p: int, N: int) -> Fraction:
    """Nested r-fold loop version of multivariate_moment_exact (small sizes only)"""
    M = p ** N
    if M ** r > BRUTE_FORCE_LIMIT:
        raise InvalidInputError(f"brute force over {M}^{r} tuples exceeds {BRUTE_FORCE_LIMIT}")
    values = q_number_values(q0, a + r * (M - 1) + 1)
    total = 0
    for ys in itertools.product(range(M), repeat=r):
        s = sum(ys)
        term = values[a + s] ** n
        total += -term if s & 1 else term
    return Fraction(total)


def moment_target(n: int, r: int, a: int, q0) -> Fraction:
    """E_{n,q0}^{(r)}(a), evaluated from the symbolic closed form"""
    return q_euler_poly(QEulerKey(n, r, a, 1)).evaluate(q0)


def moment_defect(n: int, r: int, a: int, cfg: IntegralConfig, N: int) -> Valuation:
    """v_p(S_N - E_{n,q0}^{(r)}(a))"""
    cfg.check_level(N)
    moment = multivariate_moment_exact(n, r, a, cfg.q0, cfg.p, N)
    return valuation(moment - moment_target(n, r, a, cfg.q0), cfg.p)


def classical_moment_defect(n: int, r: int, a: int, p: int, N: int) -> Valuation:
    """With q = 1 the moment targets the classical E_n^{(r)}(a)"""
    moment = multivariate_moment_exact(n, r, a, 1, p, N)
    return valuation(moment - classical_euler_poly(n, r).evaluate(a), p)


def convergence_profile(n: int, r: int, a: int, cfg: IntegralConfig) -> List[dict]:
    """Per-level residue, target residue and defect valuation for N = 1 .. N_max"""
    target = moment_target(n, r, a, cfg.q0)
    rows = []
    for N in range(1, cfg.N_max + 1):
        moment = multivariate_moment_exact(n, r, a, cfg.q0, cfg.p, N)
        rows.append({
            'N': N,
            'residue': padic_reduce(moment, cfg.p, N).residue,
            'target': target,
            'target_residue': padic_reduce(target, cfg.p, N).residue,
            'defect_valuation': valuation(moment - target, cfg.p),
        })
        logger.debug(f"📐 n={n} r={r} a={a} N={N}: v_p = {rows[-1]['defect_valuation']}")
    return rows


def meets_floor(defect: Valuation, N: int, slack: int = DEFECT_SLACK) -> bool:
    return defect >= N - slack


def is_nondecreasing(valuations: Sequence[Valuation]) -> bool:
    return all(a <= b for a, b in zip(valuations, valuations[1:]))
