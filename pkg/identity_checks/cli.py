#!/usr/bin/env python3
"""
Q-SYMMETRY Command Line
Verification runs, q-Euler/T-sum tables and p-adic integral experiments

Usage:
    python identity_checks/cli.py verify thm3 --n 1 --r 1 --w1 1 --w2 3 --x 0
    python identity_checks/cli.py verify thm4 --grid --n-max 4 --r-max 2 --w-set 1,3,5 --x-set 0,1
    python identity_checks/cli.py verify cor2 --n 2 --w1 1 --w2 3 --p 3 --N 4
    python identity_checks/cli.py table qeuler --n-max 2 --r 1 --x 0 --format csv
    python identity_checks/cli.py integral moment --p 3 --N 2 --n 1 --r 1 --x 0 --q 1

Exit codes: 0 all cases pass, 1 an identity or floor fails (or a value is
not p-integral / hits a pole), 2 usage error.

Machine output goes to standard out (or --out); logging goes to standard error.

Author: Q-SYMMETRY Project
"""

import io
import os
import sys
import csv
import json
import logging
import argparse
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence

# Add identity_checks to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from exact import InvalidInputError, PoleError, as_rat
from qeuler import QEulerKey, classical_euler_poly, q_euler_poly, set_table, get_table
from qeuler_cache import QEulerTable
from padic import (
    DEFAULT_N_MAX, IntegralConfig, NotPadicIntegerError, convergence_profile,
    fermionic_riemann_sum_exact, is_nondecreasing, meets_floor, padic_reduce,
    shift_defect, _as_integer_poly,
)
from symmetry import (
    PADIC_THEOREMS, THEOREMS, SymmetryCase, run_check, t_sum, verify_grid,
)

# Setup logging
logger = logging.getLogger('qsym-cli')

# Configuration
LOG_LEVEL_ENV = 'QSYM_LOG_LEVEL'
FORMATS = ('json', 'csv', 'latex')
_LATEX_SPECIALS = {'^': r'\^{}', '_': r'\_', '&': r'\&', '%': r'\%', '#': r'\#'}


def int_set(text: str) -> List[int]:
    """argparse type for comma-separated integer sets: '1,3,5'"""
    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty integer set")
    return sorted(set(values))


def int_set_ordered(text: str) -> List[int]:
    """argparse type for comma-separated coefficient lists (order kept)"""
    try:
        return [int(part) for part in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _json_value(value):
    if value == float('inf'):
        return 'inf'
    return value


def _flatten(result: Dict) -> Dict:
    row = dict(result.get('case', {}))
    row.update({k: _json_value(v) for k, v in result.items() if k != 'case'})
    return row


def _fieldnames(rows: Sequence[Dict]) -> List[str]:
    names: List[str] = []
    for row in rows:
        names.extend(k for k in row if k not in names)
    return names


def _latex_cell(value) -> str:
    text = 'null' if value is None else str(value)
    return ''.join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def render_output(command: str, params: Dict, results: List[Dict], fmt: str) -> str:
    """Render a run as JSON ({command, params, results}), CSV or a LaTeX tabular"""
    if fmt == 'json':
        payload = {'command': command, 'params': params, 'results': results}
        return json.dumps(payload, indent=2) + '\n'

    rows = [_flatten(result) for result in results]
    names = _fieldnames(rows)
    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=names, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()

    lines = [r'\begin{tabular}{' + 'l' * len(names) + '}', r'\hline']
    lines.append(' & '.join(_latex_cell(name) for name in names) + r' \\')
    lines.append(r'\hline')
    for row in rows:
        lines.append(' & '.join(_latex_cell(row.get(name)) for name in names) + r' \\')
    lines.extend([r'\hline', r'\end{tabular}'])
    return '\n'.join(lines) + '\n'


def _params(args: argparse.Namespace) -> Dict:
    skip = {'command', 'handler', 'out', 'cache', 'verbose', 'format'}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _require_at_least(flag: str, value: int, minimum: int) -> None:
    if value < minimum:
        raise InvalidInputError(f"{flag} must be >= {minimum}, got {value}")


# Commands

def cmd_verify(args: argparse.Namespace):
    """Run one theorem over a single case or a grid; passes iff every report is equal"""
    theorem = args.theorem
    config = None
    if args.p is not None:
        if theorem not in PADIC_THEOREMS:
            raise InvalidInputError(f"{theorem} does not take --p; use cor2 or thm1-padic")
        mode = 'padic'
        config = IntegralConfig(args.p, DEFAULT_N_MAX if args.N is None else args.N, args.q)
    elif theorem in PADIC_THEOREMS:
        raise InvalidInputError(f"{theorem} needs --p")
    elif args.q is not None:
        mode = 'rational'
    else:
        mode = 'symbolic'
    q0 = as_rat(args.q) if mode == 'rational' else None

    if args.grid:
        _require_at_least('--n-max', args.n_max, 0)
        _require_at_least('--r-max', args.r_max, 1)
        n_values = [args.n_max] if theorem == 'thm1' else range(args.n_max + 1)
        reports = verify_grid(theorem, n_values, range(1, args.r_max + 1), args.w_set,
                              args.x_set, mode, q0, config)
    else:
        case = SymmetryCase(args.n, args.r, args.w1, args.w2, args.x, mode, q0, config)
        reports = sorted(run_check(theorem, case), key=lambda report: report.sort_key())

    for report in reports:
        if not report.equal:
            logger.warning(f"❌ {report.theorem} failed: {report.case.to_dict()}")
    passed = all(report.equal for report in reports)
    return [report.to_dict() for report in reports], passed


def cmd_table(args: argparse.Namespace):
    """q-Euler polynomials, T sums or classical Euler polynomials as rows"""
    _require_at_least('--r', args.r, 1)
    if args.target == 'tsum':
        _require_at_least('--n', args.n, 0)
    else:
        _require_at_least('--n-max', args.n_max, 0)
    results = []
    if args.target == 'qeuler':
        for n in range(args.n_max + 1):
            value = q_euler_poly(QEulerKey(n, args.r, args.x, 1))
            results.append({'case': {'n': n, 'r': args.r, 'x': args.x}, 'value': value.render()})
    elif args.target == 'tsum':
        for i in range(args.n + 1):
            value = t_sum(args.n, i, args.r, args.w)
            results.append({'case': {'n': args.n, 'i': i, 'r': args.r, 'w': args.w},
                            'value': value.render()})
    else:
        for n in range(args.n_max + 1):
            value = classical_euler_poly(n, args.r)
            results.append({'case': {'n': n, 'r': args.r}, 'value': value.render('x')})
    return results, True


def cmd_integral(args: argparse.Namespace):
    """Level-by-level residues and defect valuations for N = 1 .. --N"""
    N_max = DEFAULT_N_MAX if args.N is None else args.N
    config = IntegralConfig(args.p, N_max, args.q)
    results = []
    if args.target == 'moment':
        rows = convergence_profile(args.n, args.r, args.x, config)
        for row in rows:
            results.append({
                'case': {'n': args.n, 'r': args.r, 'x': args.x, 'p': args.p,
                         'q0': str(config.q0), 'N': row['N']},
                'residue': row['residue'],
                'target': str(row['target']),
                'target_residue': row['target_residue'],
                'defect_valuation': _json_value(row['defect_valuation']),
            })
        valuations = [row['defect_valuation'] for row in rows]
        passed = is_nondecreasing(valuations) and all(
            meets_floor(v, row['N']) for v, row in zip(valuations, rows)
        )
        return results, passed

    f = _as_integer_poly(args.f)
    f_text = f.render('x')
    if args.target == 'shift-defect':
        passed = True
        for N in range(1, N_max + 1):
            defect = shift_defect(f, args.n, args.p, N)
            passed = passed and defect >= N
            results.append({
                'case': {'f': f_text, 'n': args.n, 'p': args.p, 'N': N},
                'defect_valuation': _json_value(defect),
            })
        return results, passed

    for N in range(1, N_max + 1):
        value = fermionic_riemann_sum_exact(f.evaluate, args.p, N)
        results.append({
            'case': {'f': f_text, 'p': args.p, 'N': N},
            'value': str(value),
            'residue': padic_reduce(value, args.p, N).residue,
        })
    return results, True


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='qsym',
        description='Exact checks of q-Euler symmetry identities and fermionic p-adic integrals.',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, default='json', help='Output format (default: json)')
    common.add_argument('--out', type=str, default=None, help='Write output to this file instead of stdout')
    common.add_argument('--cache', type=str, default=None, help='Persistent JSON cache of q-Euler numbers')
    common.add_argument('-v', '--verbose', action='store_true', help='Debug logging')

    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', parents=[common], help='Verify a symmetry identity')
    verify.add_argument('theorem', choices=THEOREMS)
    verify.add_argument('--n', type=int, default=0)
    verify.add_argument('--r', type=int, default=1)
    verify.add_argument('--w1', type=int, default=1)
    verify.add_argument('--w2', type=int, default=1)
    verify.add_argument('--x', type=int, default=0)
    verify.add_argument('--grid', action='store_true', help='Run every combination of the sets below')
    verify.add_argument('--n-max', type=int, default=4, dest='n_max')
    verify.add_argument('--r-max', type=int, default=2, dest='r_max')
    verify.add_argument('--w-set', type=int_set, default=[1, 3, 5], dest='w_set')
    verify.add_argument('--x-set', type=int_set, default=[0], dest='x_set')
    verify.add_argument('--q', type=str, default=None, help='Rational q0 (rational mode, or p-adic q0 with --p)')
    verify.add_argument('--p', type=int, default=None, help='Odd prime (p-adic mode)')
    verify.add_argument('--N', type=int, default=None, help=f'Highest level (default: {DEFAULT_N_MAX})')
    verify.set_defaults(handler=cmd_verify)

    table = sub.add_parser('table', parents=[common], help='Tabulate q-Euler values or T sums')
    table.add_argument('target', choices=('qeuler', 'tsum', 'classical'))
    table.add_argument('--n-max', type=int, default=4, dest='n_max')
    table.add_argument('--n', type=int, default=0)
    table.add_argument('--r', type=int, default=1)
    table.add_argument('--x', type=int, default=0)
    table.add_argument('--w', type=int, default=1)
    table.set_defaults(handler=cmd_table)

    integral = sub.add_parser('integral', parents=[common], help='Truncated fermionic p-adic integrals')
    integral.add_argument('target', choices=('moment', 'shift-defect', 'riemann'))
    integral.add_argument('--p', type=int, required=True, help='Odd prime')
    integral.add_argument('--N', type=int, default=None, help=f'Highest level (default: {DEFAULT_N_MAX})')
    integral.add_argument('--n', type=int, default=1)
    integral.add_argument('--r', type=int, default=1)
    integral.add_argument('--x', type=int, default=0)
    integral.add_argument('--q', type=str, default=None, help='p-adic q0 (default: 1+p)')
    integral.add_argument('--f', type=int_set_ordered, default=[0, 1],
                          help='Integer polynomial f as ascending coefficients (default: 0,1 = x)')
    integral.set_defaults(handler=cmd_integral)
    return parser


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else os.getenv(LOG_LEVEL_ENV, 'INFO').upper()
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    logging.getLogger().setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    _setup_logging(args.verbose)
    start_time = datetime.now()
    previous_table = get_table()
    if args.cache:
        set_table(QEulerTable(args.cache))

    try:
        results, passed = args.handler(args)
    except (NotPadicIntegerError, PoleError) as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InvalidInputError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return 2
    finally:
        if args.cache:
            get_table().save_cache()
            logger.info(f"💾 Cache stats: {get_table().get_cache_stats()}")
            set_table(previous_table)

    output = render_output(args.command, _params(args), results, args.format)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(output, encoding='utf-8')
        logger.info(f"📄 Wrote {len(results)} results to {args.out}")
    else:
        sys.stdout.write(output)

    duration = datetime.now() - start_time
    logger.info(f"{'✅' if passed else '❌'} {args.command}: {len(results)} results in {duration.total_seconds():.2f}s")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
