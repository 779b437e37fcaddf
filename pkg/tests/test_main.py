import csv
import io
import json
from fractions import Fraction

import pytest

import chern_engine
from algebra.series import GradedSeries, j_series
from main import COMMANDS, attach_range_values, int_range, main
from strategies.generating_function_strategy import GeneratingFunctionStrategy
from strategies.newton_strategy import NewtonStrategy
from strategies.recursion_strategy import RecursionStrategy


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# argument helpers

@pytest.mark.parametrize('text, values', [
    ('-3..0', [-3, -2, -1, 0]),
    ('2..0', [0, 1, 2]),
    ('4', [4]),
])
def test_int_range(text, values):
    assert int_range(text) == values


def test_attach_range_values():
    assert attach_range_values(['verify', '--na', '-3..0', '--kappa', '0..5']) == \
        ['verify', '--na=-3..0', '--kappa', '0..5']
    assert attach_range_values(['coeffs', '--na', '-1']) == ['coeffs', '--na=-1']


# dual

def test_dual_on_s2xs2(capsys, fixtures_dir):
    code, out, _ = run(capsys, 'dual', '--manifest', str(fixtures_dir / 's2xs2.yaml'))
    assert code == 0
    lines = out.splitlines()
    assert '# na = -1' in lines
    assert '# sign = 1' in lines
    assert '# codim = 4' in lines
    assert '# vacuous = true' in lines
    assert lines[lines.index('# vacuous = true') + 1:] == [
        '(2,0,0)  1/8',
        '(0,2,0)  1/12',
        '(0,0,2)  1/6',
        '# mu-basis',
        'mu1*mu2  1/6',
        'wp  1/6',
    ]


def test_dual_csv_keeps_header_and_mu_basis(capsys, fixtures_dir):
    code, out, _ = run(capsys, 'dual', '--manifest', str(fixtures_dir / 's2xs2.yaml'), '--format', 'csv')
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ['section', 'key', 'value']
    assert rows[1:] == [
        ['header', 'na', '-1'],
        ['header', 'kappa', '1'],
        ['header', 'sign', '1'],
        ['header', 'd(kappa)', '2'],
        ['header', 'codim', '4'],
        ['header', 'dim', '-2'],
        ['header', 'normal_rank', '2'],
        ['header', 'vacuous', 'true'],
        ['dual', '(2,0,0)', '1/8'],
        ['dual', '(0,2,0)', '1/12'],
        ['dual', '(0,0,2)', '1/6'],
        ['mu_basis', 'mu1*mu2', '1/6'],
        ['mu_basis', 'wp', '1/6'],
    ]


def test_dual_for_index_zero(capsys, fixtures_dir):
    code, out, _ = run(capsys, 'dual', '--manifest', str(fixtures_dir / 's2xs2_kappa0.yaml'))
    assert code == 0
    assert '(1,0,0)  -1/2' in out.splitlines()
    assert '# sign = -1' in out.splitlines()


@pytest.mark.parametrize('method', ['recursion', 'genfun', 'newton'])
def test_dual_json_is_route_independent(capsys, fixtures_dir, method):
    code, out, _ = run(capsys, 'dual', '--manifest', str(fixtures_dir / 's2xs2.yaml'),
                       '--method', method, '--format', 'json')
    assert code == 0
    payload = json.loads(out)
    assert payload['header']['na'] == -1
    assert payload['rows'][0] == {'i': 2, '2j': 0, '2k': 0, 'coefficient': {'num': 1, 'den': 8}}
    assert [row['monomial'] for row in payload['mu_basis']] == ['mu1*mu2', 'wp']


@pytest.mark.parametrize('fixture, code, error', [
    ('positive_index.yaml', 3, 'PositiveIndex'),
    ('fractional_index.yaml', 2, 'NonIntegralIndex'),
    ('unknown_key.yaml', 2, 'ManifestError'),
    ('not_unimodular.yaml', 2, 'NotUnimodular'),
    ('missing.yaml', 2, 'ManifestError'),
])
def test_dual_errors(capsys, fixtures_dir, fixture, code, error):
    result, out, err = run(capsys, 'dual', '--manifest', str(fixtures_dir / fixture))
    assert result == code
    assert out == ''
    assert error in err


# verify

def test_verify_numeric_range(capsys):
    code, out, _ = run(capsys, 'verify', '--order', '6', '--na', '-3..0', '--kappa', '0..2')
    assert code == 0
    assert '# mode = numeric' in out
    assert '# points = 12' in out
    assert 'status: equal' in out


def test_verify_symbolic_by_default(capsys):
    code, out, _ = run(capsys, 'verify', '--order', '6')
    assert code == 0
    assert '# mode = symbolic' in out
    assert '# points = 1' in out


def test_verify_with_manifest_pipeline(capsys, fixtures_dir):
    code, out, _ = run(capsys, 'verify', '--order', '4', '--na', '0', '--kappa', '1',
                       '--manifest', str(fixtures_dir / 's2xs2.yaml'))
    assert code == 0
    assert 'pipeline lambda=[0, 0] kappa=1 na=-1: equal' in out


def test_verify_takes_compute_section_from_manifest(capsys, tmp_path):
    path = tmp_path / 'compute.yaml'
    path.write_text(
        'manifold: {chi: 4, sigma: 0, intersection: [[0, 1], [1, 0]]}\n'
        'spinu: {lambda: [0, 0], kappa: 1}\n'
        'compute: {max_order: 3, symbolic: true, format: json}\n',
        encoding='utf-8')
    code, out, _ = run(capsys, 'verify', '--manifest', str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload['mode'] == 'symbolic'
    assert payload['max_order'] == 3
    assert payload['pipeline'][0]['equal'] is True

    code, out, _ = run(capsys, 'verify', '--manifest', str(path), '--order', '2', '--format', 'text')
    assert code == 0
    assert '# max_order = 2' in out


def test_verify_reports_discrepancy(capsys, monkeypatch):
    class FlippedJ2Strategy(GeneratingFunctionStrategy):
        def exponent(self, na, kappa, max_degree):
            base = super().exponent(na, kappa, max_degree)
            y = GradedSeries.variable(base.variables, max_degree, 'y')
            return base - y * y * j_series(2, max_degree, base.variables, 'z') * Fraction(1, 2)

    monkeypatch.setattr(chern_engine, 'build_strategies', lambda verbose=False: {
        'recursion': RecursionStrategy(),
        'genfun': FlippedJ2Strategy(),
        'newton': NewtonStrategy(),
    })
    code, out, _ = run(capsys, 'verify', '--order', '3', '--na', '-1', '--kappa', '1')
    assert code == 1
    assert 'status: DISCREPANCY' in out
    assert 'first discrepancy at (0, 2, 0)' in out


def test_verify_csv(capsys):
    code, out, _ = run(capsys, 'verify', '--order', '3', '--na', '-1..0', '--kappa', '0', '--format', 'csv')
    assert code == 0
    assert out.splitlines() == ['na,kappa,equal,first_discrepancy', '0,0,true,', '-1,0,true,']


# series and coeffs

def test_series_j1(capsys):
    code, out, _ = run(capsys, 'series', 'J1', '--order', '4')
    assert code == 0
    assert out.splitlines() == ['# J1 through z^4', 'z^0  1', 'z^2  -1/3', 'z^4  1/5']


def test_series_j3_is_symbolic(capsys):
    code, out, _ = run(capsys, 'series', 'J3', '--order', '2')
    assert code == 0
    assert 'z^2  -1/2·na - 1/3·ka' in out.splitlines()


def test_coeffs_numeric(capsys):
    code, out, _ = run(capsys, 'coeffs', '--na', '-1', '--kappa', '1', '--order', '2', '--method', 'genfun')
    assert code == 0
    assert out.splitlines()[1:] == [
        '(0,0,0)  1',
        '(1,0,0)  1/2',
        '(2,0,0)  1/8',
        '(0,2,0)  1/12',
        '(0,0,2)  1/6',
    ]


def test_coeffs_symbolic_json(capsys):
    code, out, _ = run(capsys, 'coeffs', '--symbolic', '--order', '2', '--format', 'json')
    assert code == 0
    payload = json.loads(out)
    assert payload['role'] == 'chern'
    last = payload['rows'][-1]
    assert (last['i'], last['2j'], last['2k']) == (0, 0, 2)
    assert last['coefficient'] == [
        {'na': 1, 'ka': 0, 'num': -1, 'den': 2},
        {'na': 0, 'ka': 1, 'num': -1, 'den': 3},
    ]


def test_coeffs_needs_parameters(capsys):
    code, out, err = run(capsys, 'coeffs', '--na', '-1')
    assert code == 2
    assert out == ''
    assert '--symbolic' in err


def test_output_is_deterministic(capsys):
    first = run(capsys, 'coeffs', '--symbolic', '--order', '5')
    second = run(capsys, 'coeffs', '--symbolic', '--order', '5')
    assert first[1] == second[1]


def test_bad_order_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(['verify', '--order', '0'])
    assert exc.value.code == 2


def test_interrupt_is_not_a_discrepancy(capsys, monkeypatch):
    def interrupted(args, logger):
        raise KeyboardInterrupt

    monkeypatch.setitem(COMMANDS, 'series', interrupted)
    code, out, err = run(capsys, 'series', 'J1')
    assert code == 130
    assert out == ''
    assert 'Cancelled' in err


def test_unexpected_failure_exits_one(capsys, monkeypatch):
    def broken(args, logger):
        raise RuntimeError('table store unavailable')

    monkeypatch.setitem(COMMANDS, 'series', broken)
    code, _, err = run(capsys, 'series', 'J1')
    assert code == 1
    assert 'table store unavailable' in err
