#!/usr/bin/env python3
"""
Q-SYMMETRY Identity Checks
Main script to run the full verification suite

This script runs every acceptance check against the exact engine:
- thm3 and thm4 symbolic grids (plus the route decomposition)
- q -> 1 degeneration to classical Euler polynomials
- closed form vs binomial recurrence for q-Euler polynomials
- p-adic convergence of the multivariate fermionic moments
- the shift identity of the fermionic integral
- collapsed sums against their nested-loop oracles
- the command-line contract

Author: Q-SYMMETRY Project
"""

import io
import os
import sys
import logging
import contextlib
from datetime import datetime
from fractions import Fraction

# Add identity_checks to Python path
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'identity_checks'))

from exact import ratfunc_eval_at_one
from qeuler import QEulerKey, classical_euler_numbers, classical_euler_poly, get_table, q_euler_poly, q_euler_poly_closed_form
from padic import (
    IntegralConfig, is_nondecreasing, meets_floor, moment_defect,
    multivariate_moment_brute_force, multivariate_moment_exact, shift_defect,
)
from symmetry import t_sum, t_sum_brute_force, verify_grid
import cli

# Setup logging
logging.basicConfig(
    level=os.getenv('QSYM_LOG_LEVEL', 'INFO').upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('qsym')

# Configuration
THEOREM_GRID = dict(n_values=range(7), r_values=range(1, 4), w_values=[1, 3, 5], x_values=range(3))
THEOREM3_BUDGET_SECONDS = int(os.getenv('QSYM_THM3_BUDGET', '60'))


def check_theorem3() -> bool:
    start = datetime.now()
    ok = all(report.equal for report in verify_grid('thm3', **THEOREM_GRID))
    elapsed = (datetime.now() - start).total_seconds()
    if elapsed > THEOREM3_BUDGET_SECONDS:
        logger.warning(f"⚠️ thm3 grid took {elapsed:.1f}s, budget is {THEOREM3_BUDGET_SECONDS}s")
        return False
    return ok


def check_theorem4() -> bool:
    thm4 = verify_grid('thm4', **THEOREM_GRID)
    route = verify_grid('route', **THEOREM_GRID)
    return all(report.equal for report in thm4 + route)


def check_degeneration() -> bool:
    ok = all(
        ratfunc_eval_at_one(q_euler_poly(QEulerKey(n, r, x, 1))) == classical_euler_poly(n, r).evaluate(x)
        for n in range(7) for r in range(1, 4) for x in range(5)
    )
    numbers = classical_euler_numbers(3, 1)
    return ok and numbers[1] == Fraction(-1, 2) and classical_euler_poly(3, 1).evaluate(0) == Fraction(1, 4)


def check_closed_form() -> bool:
    return all(
        q_euler_poly_closed_form(n, r, x) == q_euler_poly(QEulerKey(n, r, x, 1))
        for n in range(9) for r in range(1, 4) for x in range(6)
    )


def check_padic_convergence() -> bool:
    for p in (3, 5):
        cfg = IntegralConfig(p)
        for r in (1, 2):
            for n in range(4):
                for x in (0, 1):
                    valuations = [moment_defect(n, r, x, cfg, N) for N in range(1, 6)]
                    if not is_nondecreasing(valuations):
                        return False
                    if not all(meets_floor(v, N) for N, v in enumerate(valuations, 1)):
                        return False
    return True


def check_shift_identity() -> bool:
    functions = ([0, 1], [0, 0, 1], [0, 2, 0, 1])
    ok = all(
        shift_defect(f, n, p, N) >= N
        for f in functions for n in (1, 2, 3) for p in (3, 5) for N in range(1, 6)
    )
    return ok and shift_defect([1], 2, 3, 3) == float('inf')


def check_oracles() -> bool:
    sums_ok = all(
        t_sum(n, i, r, w) == t_sum_brute_force(n, i, r, w)
        for w in (1, 3, 5) for r in range(1, 4) for n in range(5) for i in range(n + 1)
    )
    moments_ok = all(
        multivariate_moment_exact(n, r, a, 4, 3, 1) == multivariate_moment_brute_force(n, r, a, 4, 3, 1)
        for n in range(4) for r in range(1, 4) for a in range(3)
    )
    return sums_ok and moments_ok


def check_cli() -> bool:
    stdout = io.StringIO()
    with contextlib.redirect_stdout(stdout):
        code = cli.main(['verify', 'thm3', '--n', '1', '--r', '1', '--w1', '1', '--w2', '3', '--x', '0'])
    ok = code == 0 and '"lhs": "(-1)/(1+q)"' in stdout.getvalue()
    with contextlib.redirect_stderr(io.StringIO()):
        return ok and cli.main(['verify', 'thm3', '--w1', '2']) == 2


def main():
    """Run all acceptance checks"""
    start_time = datetime.now()
    logger.info("🚀 Q-SYMMETRY identity checks started")

    # List of checks to run
    checks = [
        (check_theorem3, 'thm3 symbolic grid'),
        (check_theorem4, 'thm4 symbolic grid + route decomposition'),
        (check_degeneration, 'q -> 1 degeneration'),
        (check_closed_form, 'Closed form vs recurrence'),
        (check_padic_convergence, 'p-adic convergence of moments'),
        (check_shift_identity, 'Shift identity'),
        (check_oracles, 'Nested-loop oracles'),
        (check_cli, 'Command-line contract'),
    ]

    success_count = 0
    total_count = len(checks)
    logger.info(f"📊 Total checks to run: {total_count}")

    for i, (check, description) in enumerate(checks, 1):
        check_start = datetime.now()
        logger.info(f"🔄 [{i}/{total_count}] Running: {description}")
        try:
            passed = check()
        except Exception as e:
            logger.error(f"❌ {description} - Error: {e}")
            continue
        elapsed = (datetime.now() - check_start).total_seconds()
        if passed:
            success_count += 1
            logger.info(f"✅ {description} - Success ({elapsed:.1f}s)")
        else:
            logger.error(f"❌ {description} - Failed ({elapsed:.1f}s)")

    duration = datetime.now() - start_time
    stats = get_table().get_cache_stats()
    logger.info(f"💾 q-Euler table: {stats['total_entries']} entries, {stats['hits']} hits, {stats['misses']} misses")
    logger.info(f"🎉 Checks completed: {success_count}/{total_count} successful")
    logger.info(f"⏱️ Total duration: {duration.total_seconds():.1f}s")

    if success_count < total_count:
        logger.warning(f"⚠️ {total_count - success_count} checks failed")
        sys.exit(1)


if __name__ == "__main__":
    main()
