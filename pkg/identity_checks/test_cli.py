#!/usr/bin/env python3
"""
Tests for the command-line front end (exit codes and output formats)
"""

import json
import sys
from pathlib import Path

import pytest

# Add identity_checks to path
sys.path.append(str(Path(__file__).parent))

import cli
import qeuler
import symmetry
from exact import RatFunc


def _run_json(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_verify_single_case(capsys):
    code, payload = _run_json(capsys, ['verify', 'thm3', '--n', '1', '--r', '1', '--w1', '1', '--w2', '3', '--x', '0'])
    assert code == 0
    assert payload['command'] == 'verify'
    assert payload['params']['theorem'] == 'thm3'
    [result] = payload['results']
    assert result['lhs'] == result['rhs'] == '(-1)/(1+q)'
    assert result['equal'] is True
    assert result['defect_valuation'] is None
    assert result['case'] == {'theorem': 'thm3', 'n': 1, 'r': 1, 'w1': 1, 'w2': 3, 'x': 0, 'mode': 'symbolic'}


def test_verify_grid(capsys):
    code, payload = _run_json(capsys, [
        'verify', 'thm4', '--grid', '--n-max', '4', '--r-max', '2', '--w-set', '1,3,5', '--x-set', '0,1',
    ])
    assert code == 0
    assert len(payload['results']) == 5 * 2 * 9 * 2
    keys = [(c['n'], c['r'], c['w1'], c['w2'], c['x']) for c in (res['case'] for res in payload['results'])]
    assert keys == sorted(keys)


def test_verify_is_deterministic(capsys):
    argv = ['verify', 'route', '--grid', '--n-max', '2', '--r-max', '1', '--w-set', '3,1']
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv)
    assert capsys.readouterr().out == first


@pytest.mark.parametrize("argv", [
    ['verify', 'thm3', '--n', '1', '--w1', '2', '--w2', '3'],
    ['verify', 'thm3', '--n', 'abc'],
    ['verify', 'thm7'],
    ['verify', 'thm3', '--grid', '--w-set', '1,x'],
    ['verify', 'cor2', '--n', '2'],
    ['verify', 'thm3', '--p', '3'],
    ['verify', 'thm3', '--q', 'half'],
    ['integral', 'moment', '--p', '4', '--N', '2'],
    ['integral', 'moment', '--N', '2'],
    ['table', 'tsum', '--n', '2', '--w', '4'],
    ['verify', 'thm4', '--grid', '--n-max', '-1'],
    ['verify', 'thm3', '--grid', '--r-max', '0'],
    ['table', 'qeuler', '--n-max', '-1', '--r', '0'],
    ['table', 'qeuler', '--n-max', '-1'],
    ['table', 'classical', '--r', '0'],
    ['table', 'tsum', '--n', '-2', '--w', '3'],
    ['bogus'],
])
def test_usage_errors_exit_2(capsys, argv):
    assert cli.main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ''
    assert 'error' in captured.err


def test_pole_exits_1(capsys):
    assert cli.main(['verify', 'thm3', '--n', '1', '--w1', '1', '--w2', '3', '--q=-1']) == 1
    assert 'pole' in capsys.readouterr().err


def test_not_padic_integer_exits_1(capsys):
    assert cli.main(['integral', 'moment', '--p', '3', '--N', '2', '--q', '1/3']) == 1
    assert 'not a 3-adic integer' in capsys.readouterr().err


def test_failed_identity_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(symmetry, 'theorem3_side', lambda n, r, w_self, w_other, x: RatFunc(w_self))
    code, payload = _run_json(capsys, ['verify', 'thm3', '--n', '1', '--w1', '1', '--w2', '3'])
    assert code == 1
    assert payload['results'][0]['equal'] is False


def test_verify_rational_mode(capsys):
    code, payload = _run_json(capsys, ['verify', 'thm4', '--n', '2', '--r', '2', '--w1', '3', '--w2', '5', '--q', '1/2'])
    assert code == 0
    [result] = payload['results']
    assert result['case']['q0'] == '1/2'
    assert result['lhs'] == result['rhs']


def test_verify_padic_mode(capsys):
    code, payload = _run_json(capsys, ['verify', 'cor2', '--n', '2', '--w1', '1', '--w2', '3', '--p', '3', '--N', '3'])
    assert code == 0
    assert [res['case']['N'] for res in payload['results']] == [1, 2, 3]
    assert all(res['case']['q0'] == '4' for res in payload['results'])
    assert all(res['nondecreasing'] is True for res in payload['results'])


def test_table_qeuler_csv(capsys):
    assert cli.main(['table', 'qeuler', '--n-max', '2', '--r', '1', '--x', '0', '--format', 'csv']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'n,r,x,value'
    assert lines[1] == '0,1,0,1'
    assert lines[2] == '1,1,0,(-1)/(1+q)'
    assert lines[3].startswith('2,1,0,')
    assert len(lines) == 4


def test_table_qeuler_single_row(capsys):
    code, payload = _run_json(capsys, ['table', 'qeuler', '--n-max', '0', '--r', '5', '--x', '0'])
    assert code == 0
    assert [res['value'] for res in payload['results']] == ['1']


def test_table_tsum(capsys):
    code, payload = _run_json(capsys, ['table', 'tsum', '--n', '1', '--r', '1', '--w', '3', '--format', 'json'])
    assert code == 0
    assert [res['value'] for res in payload['results']] == ['1-q+q^2', 'q']


def test_table_classical(capsys):
    code, payload = _run_json(capsys, ['table', 'classical', '--n-max', '1', '--r', '1'])
    assert code == 0
    assert [res['value'] for res in payload['results']] == ['1', '-1/2+x']


def test_table_latex(capsys):
    assert cli.main(['table', 'tsum', '--n', '1', '--r', '1', '--w', '3', '--format', 'latex']) == 0
    out = capsys.readouterr().out
    assert out.startswith('\\begin{tabular}{lllll}')
    assert '1-q+q\\^{}2' in out
    assert out.rstrip().endswith('\\end{tabular}')


def test_integral_moment(capsys):
    code, payload = _run_json(capsys, ['integral', 'moment', '--p', '3', '--N', '2', '--n', '1', '--r', '1', '--x', '0', '--q', '1'])
    assert code == 0
    last = payload['results'][-1]
    assert last['case']['N'] == 2
    assert last['residue'] == 4
    assert last['target'] == '-1/2'
    assert last['target_residue'] == 4
    assert last['defect_valuation'] >= 2


def test_integral_shift_defect(capsys):
    code, payload = _run_json(capsys, ['integral', 'shift-defect', '--p', '3', '--N', '2', '--n', '1', '--f', '0,1'])
    assert code == 0
    assert payload['results'][-1]['defect_valuation'] == 2
    assert payload['results'][-1]['case']['f'] == 'x'


def test_integral_shift_defect_constant_is_inf(capsys):
    code, payload = _run_json(capsys, ['integral', 'shift-defect', '--p', '5', '--N', '2', '--n', '2', '--f', '1'])
    assert code == 0
    assert {res['defect_valuation'] for res in payload['results']} == {'inf'}


def test_integral_riemann(capsys):
    code, payload = _run_json(capsys, ['integral', 'riemann', '--p', '3', '--N', '2', '--f', '0,1'])
    assert code == 0
    assert [(res['value'], res['residue']) for res in payload['results']] == [('1', 1), ('4', 4)]


def test_out_file(tmp_path, capsys):
    out_file = tmp_path / 'reports' / 'thm3.json'
    assert cli.main(['verify', 'thm3', '--n', '1', '--w1', '1', '--w2', '3', '--out', str(out_file)]) == 0
    assert capsys.readouterr().out == ''
    payload = json.loads(out_file.read_text(encoding='utf-8'))
    assert payload['results'][0]['lhs'] == '(-1)/(1+q)'


def test_cache_file(tmp_path, capsys):
    cache_file = tmp_path / 'qeuler.json'
    qeuler.clear_caches()
    assert cli.main(['table', 'qeuler', '--n-max', '1', '--r', '7', '--cache', str(cache_file)]) == 0
    payload = json.loads(cache_file.read_text(encoding='utf-8'))
    assert '1,7' in payload
    # the default table is restored after the run
    assert qeuler.get_table().cache_file != cache_file
