#!/usr/bin/env python3
"""
Q-SYMMETRY Identity Verifiers
Alternating power sums T_{n,i,q}^{(r)}(w) and exact checks of the symmetry
identities in two odd parameters w1, w2

Checks provided:
- thm3: [w1]^n sum_j (-1)^{sum j} E_{n,q^{w1}}(w2 x + (w2/w1) sum j), symmetric in w1 <-> w2
- thm4: the same quantity as sum_i C(n,i) [w1]^{n-i} [w2]^i T_{n,i,q^{w2}}(w1) E_{n-i,q^{w1}}(w2 x)
- route: thm3 side against thm4 side for the same (w1, w2)
- cor2: both integral sides as level-N Riemann sums, compared p-adically
- thm1: thm3 for every degree up to n_max (generating functions to that order)
- thm1-padic: the symmetric triple Riemann sum behind thm1 against the exact side

The thm3 and thm4 sides go through different code paths (collapsed j-sum of
q-Euler expansions vs. i-indexed T/E convolution).

Author: Q-SYMMETRY Project
"""

import logging
import itertools
from dataclasses import dataclass, replace
from functools import lru_cache
from fractions import Fraction
from math import comb
from typing import Iterable, List, Optional, Sequence

from exact import Poly, RatFunc, InvalidInputError, ZERO_POLY, as_rat
from qeuler import QEulerKey, q_euler_closed_form_sum, q_euler_poly, q_int
from padic import (
    BRUTE_FORCE_LIMIT, IntegralConfig, Valuation, is_nondecreasing, meets_floor, padic_reduce,
    q_number_values, signed_power_sum, tuple_count_by_sum, valuation,
)

# Setup logging
logger = logging.getLogger('qsym-symmetry')

# Configuration
THEOREMS = ('thm3', 'thm4', 'route', 'cor2', 'thm1', 'thm1-padic')
MODES = ('symbolic', 'rational', 'padic')
PADIC_THEOREMS = ('cor2', 'thm1-padic')


def _require_int(name: str, value, minimum: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise InvalidInputError(f"{name} must be an integer >= {minimum}, got {value!r}")


def _require_odd(name: str, value) -> None:
    _require_int(name, value, 1)
    if value % 2 == 0:
        raise InvalidInputError(f"{name} must be odd, got {value}")


@dataclass(frozen=True)
class SymmetryCase:
    n: int
    r: int
    w1: int
    w2: int
    x: int = 0
    mode: str = 'symbolic'
    q0: Optional[Fraction] = None
    config: Optional[IntegralConfig] = None

    def __post_init__(self):
        _require_int('n', self.n, 0)
        _require_int('r', self.r, 1)
        _require_odd('w1', self.w1)
        _require_odd('w2', self.w2)
        _require_int('x', self.x, 0)
        if self.mode not in MODES:
            raise InvalidInputError(f"unknown mode {self.mode!r}")
        if self.mode == 'rational':
            if self.q0 is None:
                raise InvalidInputError("rational mode needs q0")
            object.__setattr__(self, 'q0', as_rat(self.q0))
        if self.mode == 'padic' and self.config is None:
            raise InvalidInputError("p-adic mode needs an IntegralConfig")

    def swapped(self) -> 'SymmetryCase':
        return replace(self, w1=self.w2, w2=self.w1)

    def to_dict(self) -> dict:
        data = {'n': self.n, 'r': self.r, 'w1': self.w1, 'w2': self.w2, 'x': self.x, 'mode': self.mode}
        if self.mode == 'rational':
            data['q0'] = str(self.q0)
        if self.mode == 'padic':
            data['p'] = self.config.p
            data['q0'] = str(self.config.q0)
        return data


@dataclass(frozen=True)
class SymmetryReport:
    theorem: str
    case: SymmetryCase
    lhs: str
    rhs: str
    equal: bool
    defect_valuation: Optional[Valuation] = None
    level: Optional[int] = None
    # across levels 1..N of the same case; reported, not part of equal
    nondecreasing: Optional[bool] = None

    def sort_key(self):
        return (self.theorem, self.case.n, self.case.r, self.case.w1, self.case.w2,
                self.case.x, self.level or 0)

    def to_dict(self) -> dict:
        case = {'theorem': self.theorem, **self.case.to_dict()}
        if self.level is not None:
            case['N'] = self.level
        defect = self.defect_valuation
        data = {
            'case': case,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'equal': self.equal,
            'defect_valuation': 'inf' if defect == float('inf') else defect,
        }
        if self.nondecreasing is not None:
            data['nondecreasing'] = self.nondecreasing
        return data


def signed_counts(r: int, w: int) -> List[int]:
    """(-1)^s c(s) for the j-tuples in [0, w)^r grouped by s = sum j"""
    return [-c if s & 1 else c for s, c in enumerate(tuple_count_by_sum(r, w))]


@lru_cache(maxsize=2048)
def t_sum(n: int, i: int, r: int, w: int) -> RatFunc:
    """T_{n,i,q}^{(r)}(w) = sum_s (-1)^s c(s) q^{(n-i)s} [s]_q^i"""
    _require_int('n', n, 0)
    _require_int('r', r, 1)
    _require_odd('w', w)
    if not isinstance(i, int) or not 0 <= i <= n:
        raise InvalidInputError(f"i must lie in [0, {n}], got {i!r}")
    total = ZERO_POLY
    for s, c in enumerate(signed_counts(r, w)):
        total = total + q_int(s) ** i * Poly.monomial((n - i) * s, c)
    return RatFunc(total)


def t_sum_brute_force(n: int, i: int, r: int, w: int) -> RatFunc:
    """T_{n,i,q}^{(r)}(w) by the direct r-fold loop over j-tuples"""
    if w ** r > BRUTE_FORCE_LIMIT:
        raise InvalidInputError(f"brute force over {w}^{r} tuples exceeds {BRUTE_FORCE_LIMIT}")
    total = ZERO_POLY
    for js in itertools.product(range(w), repeat=r):
        s = sum(js)
        term = Poly.monomial((n - i) * s) * q_int(s) ** i
        total = total - term if s & 1 else total + term
    return RatFunc(total)


def theorem3_side(n: int, r: int, w_self: int, w_other: int, x: int) -> RatFunc:
    """[w_self]^n sum_j (-1)^{sum j} E_{n,q^{w_self}}^{(r)}(w_other x + (w_other/w_self) sum j)"""
    _require_odd('w_self', w_self)
    _require_odd('w_other', w_other)
    weighted = [
        (w_self * w_other * x + w_other * s, c)
        for s, c in enumerate(signed_counts(r, w_self))
    ]
    return q_euler_closed_form_sum(n, r, weighted, w_self) * q_int(w_self) ** n


def theorem4_side(n: int, r: int, w_a: int, w_b: int, x: int) -> RatFunc:
    """sum_i C(n,i) [w_a]^{n-i} [w_b]^i T_{n,i,q^{w_b}}^{(r)}(w_a) E_{n-i,q^{w_a}}^{(r)}(w_b x)"""
    _require_odd('w_a', w_a)
    _require_odd('w_b', w_b)
    terms = []
    for i in range(n + 1):
        power_sum = t_sum(n, i, r, w_a).subst_power(w_b).num
        if power_sum.is_zero:
            continue
        weight = power_sum * q_int(w_a) ** (n - i) * q_int(w_b) ** i * comb(n, i)
        # integer argument w_b x: evaluate in q, then substitute q -> q^{w_a}
        value = q_euler_poly(QEulerKey(n - i, r, w_b * x, 1)).subst_power(w_a)
        terms.append((weight * value.num, value.den))
    return RatFunc.from_terms(terms)


def _exact_report(theorem: str, case: SymmetryCase, lhs: RatFunc, rhs: RatFunc) -> SymmetryReport:
    if case.mode == 'symbolic':
        report = SymmetryReport(theorem, case, lhs.render(), rhs.render(), lhs == rhs)
    elif case.mode == 'rational':
        left, right = lhs.evaluate(case.q0), rhs.evaluate(case.q0)
        report = SymmetryReport(theorem, case, str(left), str(right), left == right)
    else:
        raise InvalidInputError(f"{theorem} runs in symbolic or rational mode, not {case.mode}")
    if not report.equal:
        logger.warning(f"⚠️ {theorem} failed for {case.to_dict()}")
    return report


def theorem3_check(case: SymmetryCase) -> SymmetryReport:
    lhs = theorem3_side(case.n, case.r, case.w1, case.w2, case.x)
    rhs = theorem3_side(case.n, case.r, case.w2, case.w1, case.x)
    return _exact_report('thm3', case, lhs, rhs)


def theorem4_check(case: SymmetryCase) -> SymmetryReport:
    lhs = theorem4_side(case.n, case.r, case.w1, case.w2, case.x)
    rhs = theorem4_side(case.n, case.r, case.w2, case.w1, case.x)
    return _exact_report('thm4', case, lhs, rhs)


def route_check(case: SymmetryCase) -> SymmetryReport:
    """The thm3 side equals the thm4 side term-by-term decomposition"""
    lhs = theorem3_side(case.n, case.r, case.w1, case.w2, case.x)
    rhs = theorem4_side(case.n, case.r, case.w1, case.w2, case.x)
    return _exact_report('route', case, lhs, rhs)


def theorem1_series_check(n_max: int, r: int, w1: int, w2: int, x: int,
                          mode: str = 'symbolic', q0=None) -> List[SymmetryReport]:
    """thm3 for every n <= n_max: the two generating functions agree to order n_max"""
    _require_int('n_max', n_max, 0)
    return [
        replace(theorem3_check(SymmetryCase(n, r, w1, w2, x, mode, q0)), theorem='thm1')
        for n in range(n_max + 1)
    ]


def corollary2_riemann_side(n: int, r: int, w_self: int, w_other: int, x: int,
                            q0, p: int, N: int) -> Fraction:
    """Level-N Riemann sum of one side of the integral identity

    [w_self]_q^n [w_other x + (w_other/w_self) s + Y]_{q^{w_self}}^n collapses
    to [w_self w_other x + w_other s + w_self Y]_q^n, an integer polynomial
    in q0, so the sum stays p-integral.
    """
    outer = signed_counts(r, w_self)
    inner = tuple_count_by_sum(r, p ** N)
    base = w_self * w_other * x
    top = base + w_other * (len(outer) - 1) + w_self * (len(inner) - 1)
    values = q_number_values(q0, top + 1)
    total = Fraction(0)
    for s, c in enumerate(outer):
        total += c * signed_power_sum(n, inner, values, start=base + w_other * s, stride=w_self)
    return total


def corollary2_padic_check(case: SymmetryCase, N: int) -> SymmetryReport:
    """Both integral sides at level N; passes when v_p(LHS_N - RHS_N) >= N - slack"""
    if case.mode != 'padic':
        raise InvalidInputError(f"cor2 runs in p-adic mode, not {case.mode}")
    cfg = case.config
    cfg.check_level(N)
    left = corollary2_riemann_side(case.n, case.r, case.w1, case.w2, case.x, cfg.q0, cfg.p, N)
    right = corollary2_riemann_side(case.n, case.r, case.w2, case.w1, case.x, cfg.q0, cfg.p, N)
    defect = valuation(left - right, cfg.p)
    report = SymmetryReport(
        'cor2', case,
        str(padic_reduce(left, cfg.p, N)), str(padic_reduce(right, cfg.p, N)),
        meets_floor(defect, N), defect, N,
    )
    logger.debug(f"📐 cor2 {case.to_dict()} N={N}: v_p = {defect}")
    return report


def merged_riemann_sum(n: int, r: int, w1: int, w2: int, x: int, q0, p: int, N: int) -> Fraction:
    """The triple sum over j-, i- and y-tuples with argument w1 w2 (x + Y) + w2 J + w1 I

    Exchanging w1 and w2 only exchanges the roles of J and I.
    """
    outer = signed_counts(r, w1)
    middle = signed_counts(r, w2)
    inner = tuple_count_by_sum(r, p ** N)
    stride = w1 * w2
    top = stride * x + w2 * (len(outer) - 1) + w1 * (len(middle) - 1) + stride * (len(inner) - 1)
    values = q_number_values(q0, top + 1)
    total = Fraction(0)
    for J, c_j in enumerate(outer):
        for I, c_i in enumerate(middle):
            start = stride * x + w2 * J + w1 * I
            total += c_j * c_i * signed_power_sum(n, inner, values, start=start, stride=stride)
    return total


def theorem1_padic_check(case: SymmetryCase, N: int) -> SymmetryReport:
    """Symmetric triple sum at level N against the exact thm3 side at q0"""
    if case.mode != 'padic':
        raise InvalidInputError(f"thm1-padic runs in p-adic mode, not {case.mode}")
    cfg = case.config
    cfg.check_level(N)
    forward = merged_riemann_sum(case.n, case.r, case.w1, case.w2, case.x, cfg.q0, cfg.p, N)
    backward = merged_riemann_sum(case.n, case.r, case.w2, case.w1, case.x, cfg.q0, cfg.p, N)
    target = theorem3_side(case.n, case.r, case.w1, case.w2, case.x).evaluate(cfg.q0)
    defect = valuation(forward - target, cfg.p)
    return SymmetryReport(
        'thm1-padic', case,
        str(padic_reduce(forward, cfg.p, N)), str(padic_reduce(backward, cfg.p, N)),
        forward == backward and meets_floor(defect, N), defect, N,
    )


def run_check(theorem: str, case: SymmetryCase, N: Optional[int] = None) -> List[SymmetryReport]:
    """Dispatch one case to its verifier; thm1 uses case.n as n_max"""
    if theorem == 'thm3':
        return [theorem3_check(case)]
    if theorem == 'thm4':
        return [theorem4_check(case)]
    if theorem == 'route':
        return [route_check(case)]
    if theorem == 'thm1':
        return theorem1_series_check(case.n, case.r, case.w1, case.w2, case.x, case.mode, case.q0)
    if theorem in PADIC_THEOREMS:
        check = corollary2_padic_check if theorem == 'cor2' else theorem1_padic_check
        levels = [N] if N is not None else range(1, case.config.N_max + 1)
        reports = [check(case, level) for level in levels]
        if len(reports) < 2:
            return reports
        growing = is_nondecreasing([report.defect_valuation for report in reports])
        if not growing:
            logger.info(f"📉 {theorem} valuations drop with N for {case.to_dict()}")
        return [replace(report, nondecreasing=growing) for report in reports]
    raise InvalidInputError(f"unknown theorem {theorem!r}")


def verify_grid(theorem: str, n_values: Iterable[int], r_values: Iterable[int],
                w_values: Sequence[int], x_values: Iterable[int], mode: str = 'symbolic',
                q0=None, config: Optional[IntegralConfig] = None,
                N: Optional[int] = None) -> List[SymmetryReport]:
    """Every (n, r, w1, w2, x) combination, reports sorted canonically"""
    reports: List[SymmetryReport] = []
    for n, r, w1, w2, x in itertools.product(n_values, r_values, w_values, w_values, x_values):
        case = SymmetryCase(n, r, w1, w2, x, mode, q0, config)
        reports.extend(run_check(theorem, case, N))
    reports.sort(key=SymmetryReport.sort_key)
    failed = sum(1 for report in reports if not report.equal)
    logger.info(f"📊 {theorem}: {len(reports) - failed}/{len(reports)} cases passed")
    return reports
