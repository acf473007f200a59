import csv
import io
import json

import pytest

from curvetrace import __version__
from curvetrace.cli import run


def table(text):
    """Header lines, CSV rows and trailer lines of a command's output."""
    lines = text.splitlines()
    comments = [l[2:] for l in lines if l.startswith('# ')]
    rows = list(csv.reader(io.StringIO('\n'.join(l for l in lines if not l.startswith('# ')))))
    return comments, rows


@pytest.fixture
def angles_file(tmp_path):
    path = tmp_path / 'angles.json'
    path.write_text(json.dumps({'e1': 1.0, 'e2': 1.1, 'e3': 1.2}))
    return str(path)


def test_no_arguments_prints_help(capsys):
    assert run([]) == 0
    assert 'Commands:' in capsys.readouterr().out


def test_unknown_command(capsys):
    assert run(['frobnicate']) == 2
    assert 'Unknown command' in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    assert run(['route', 'genus2']) == 2


def test_validate(capsys, tmp_path):
    assert run(['validate', 'genus2', '--dehn', 'm200']) == 0
    assert '✓' in capsys.readouterr().err

    broken = tmp_path / 'broken.json'
    broken.write_text(json.dumps({
        'vertices': [{'id': 'T1', 'kind': 'trinion'}],
        'edges': [{'id': 'e1', 'end0': ['T1', 1], 'end1': ['T1', 2]}],
    }))
    assert run(['validate', str(broken)]) == 2
    assert 'unfilled slot: T1 slot 3' in capsys.readouterr().out


def test_validate_inadmissible_dehn(capsys, tmp_path):
    odd = tmp_path / 'odd.json'
    odd.write_text(json.dumps({'e1': [1, 0]}))
    assert run(['validate', 'genus2', '--dehn', str(odd)]) == 2
    assert 'odd sum at trinion T1' in capsys.readouterr().out


def test_missing_file_exits_2_and_names_it(capsys, tmp_path):
    missing = str(tmp_path / 'nope' / 'genus2.json')
    assert run(['route', missing, 'm200']) == 2
    err = capsys.readouterr().err
    assert '❌ Error' in err
    assert missing in err


def test_unreadable_inputs_exit_2(capsys, tmp_path):
    assert run(['validate', str(tmp_path)]) == 2
    assert 'cannot read' in capsys.readouterr().err

    latin = tmp_path / 'latin.json'
    latin.write_bytes(b'\xff\xfe{')
    assert run(['validate', str(latin)]) == 2
    assert str(latin) in capsys.readouterr().err


@pytest.mark.parametrize("command", [
    ['sample', 'genus2', '--seed', '-1'],
    ['fourier', 'genus2', 'm200', '--seed', '-3'],
    ['suite', 'genus2', '--quick', '--seed', '-1'],
])
def test_negative_seed_exits_2(capsys, command):
    assert run(command) == 2
    assert 'seed must be a non-negative integer' in capsys.readouterr().err


def test_route_output(capsys):
    assert run(['route', 'genus2', 'm200']) == 0
    comments, rows = table(capsys.readouterr().out)
    assert comments[0] == f"curvetrace {__version__}"
    assert comments[1] == "command: curvetrace route genus2 m200"
    assert comments[-1] == "components: 1"
    assert rows[0][:3] == ['component', 'step', 'kind']
    kinds = [row[2] for row in rows[1:]]
    assert kinds == ['crossing', 'arc', 'crossing', 'arc']


def test_route_words(capsys, tmp_path):
    dehn = tmp_path / 'm1.json'
    dehn.write_text(json.dumps({'e1': [1, 0]}))
    assert run(['route', 'one_holed_torus', str(dehn), '--words']) == 0
    _, rows = table(capsys.readouterr().out)
    assert rows[1] == ['0', 'g[e1,0] T1.z1^-1']


def test_eval_writes_output_file(capsys, tmp_path, angles_file):
    out = tmp_path / 'eval.csv'
    assert run(['eval', 'genus2', 'm110', '--angles', angles_file, '--output', str(out)]) == 0
    assert capsys.readouterr().out == ''
    comments, rows = table(out.read_text())
    assert comments[2] == 'seed: none'
    assert rows[-1][0] == 'total'
    assert abs(float(rows[-1][1])) <= 2.0


def test_eval_outside_delta(capsys, tmp_path):
    angles = tmp_path / 'angles.json'
    angles.write_text(json.dumps({'e1': 3.14159, 'e2': 3.14159, 'e3': 3.14159}))
    assert run(['eval', 'genus2', 'm110', '--angles', str(angles)]) == 2
    assert 'outside the moment polytope' in capsys.readouterr().err


def test_sample_is_reproducible(capsys, tmp_path):
    saved = tmp_path / 'angles.json'
    assert run(['sample', 'genus2', '--seed', '4', '--angles-out', str(saved)]) == 0
    first = capsys.readouterr().out
    assert run(['sample', 'genus2', '--seed', '4']) == 0
    second = capsys.readouterr().out
    assert table(first)[1] == table(second)[1]
    assert set(json.loads(saved.read_text())) == {'e1', 'e2', 'e3'}
    assert run(['eval', 'genus2', 'm200', '--angles', str(saved)]) == 0


def test_delta_classification(capsys, tmp_path):
    angles = tmp_path / 'angles.json'
    angles.write_text(json.dumps({'e1': 2.0943951023931953, 'e2': 2.0943951023931953,
                                  'e3': 2.0943951023931953}))
    assert run(['delta', 'genus2', str(angles)]) == 0
    comments, rows = table(capsys.readouterr().out)
    assert comments[-1] == 'classification: boundary'
    assert len(rows) == 9


def test_fourier(capsys):
    assert run(['fourier', 'genus2', 'm200', '--seed', '3']) == 0
    comments, rows = table(capsys.readouterr().out)
    assert rows[0] == ['k_e1', 'k_e2', 'k_e3', 'real', 'imag', 'modulus']
    assert len(rows) == 1 + 7 * 3 * 3
    assert comments[-1].endswith('(pass)')


def test_fourier_single_edge(capsys):
    assert run(['fourier', 'genus2', 'm110', '--edge', 'e1', '--grid', '4']) == 0
    _, rows = table(capsys.readouterr().out)
    assert rows[0][0] == 'k_e1'
    assert len(rows) == 1 + 9
    assert run(['fourier', 'genus2', 'm110', '--edge', 'x']) == 2


def test_intersect(capsys):
    assert run(['intersect', 'genus2', 'm110', '--seed', '2']) == 0
    _, rows = table(capsys.readouterr().out)
    assert rows[1:] == [['e1', '1', '1'], ['e2', '1', '1'], ['e3', '0', '0']]


def test_twist_check(capsys):
    assert run(['twist-check', 'genus2', 'm200', '--edge', 'e1', '--ell', '1', '2']) == 0
    _, rows = table(capsys.readouterr().out)
    assert [row[3] for row in rows[1:]] == ['-1', '1']
    assert run(['twist-check', 'genus2', 'm200', '--edge', 'e2']) == 2


def test_independence(capsys):
    assert run(['independence', 'one_holed_torus', '--m-max', '1', '--t-max', '1',
                '--seed', '1']) == 0
    comments, rows = table(capsys.readouterr().out)
    assert len(rows) == 1 + 5
    assert comments[-1].startswith('verdict: independent')


def test_independence_column_cap(capsys):
    assert run(['config', 'set', 'independence.max_columns', '3']) == 0
    assert run(['independence', 'one_holed_torus', '--m-max', '1', '--t-max', '1']) == 2
    assert 'cap' in capsys.readouterr().err


def test_config_commands(capsys, isolated_config):
    assert run(['config', 'set', 'seed', '9']) == 0
    assert isolated_config.exists()
    capsys.readouterr()
    assert run(['config', 'get', 'seed']) == 0
    assert capsys.readouterr().out.strip() == '9'
    assert run(['config', 'frob']) == 2


def test_suite_unknown_check(capsys):
    assert run(['config', 'set', 'suite.checks', '["nope"]']) == 0
    assert run(['suite', 'genus2', '--quick']) == 2
    assert 'Unknown check' in capsys.readouterr().err


def test_suite_on_chosen_multicurves(capsys, tmp_path):
    curve = tmp_path / 'curve.json'
    curve.write_text(json.dumps({'e1': [1, 1]}))
    out = tmp_path / 'report.csv'
    assert run(['config', 'set', 'suite.checks', '["polytope", "support", "intersection"]']) == 0
    assert run(['suite', 'one_holed_torus', '--quick', '--seed', '2', '--dehn', str(curve),
                '--grid', '4', '--tol', 'vanishing=1e-7', '--output', str(out)]) == 0
    assert '✓ all checks passed' in capsys.readouterr().err
    comments, rows = table(out.read_text())
    assert comments[1].startswith('command: curvetrace suite one_holed_torus --quick')
    assert comments[2] == 'seed: 2'
    assert [row[0] for row in rows[1:]] == ['polytope', 'support', 'intersection']
    assert rows[2][3].startswith('1 parameters x 2 points')


@pytest.mark.parametrize("extra", [
    ['--tol', 'nope=1'],
    ['--tol', 'vanishing'],
    ['--grid', '0'],
    ['--dehn', 'missing.json'],
])
def test_suite_rejects_bad_scenarios(capsys, extra):
    assert run(['config', 'set', 'suite.checks', '["polytope"]']) == 0
    assert run(['suite', 'one_holed_torus', '--quick'] + extra) == 2


def test_suite_reports_skipped_checks(capsys, tmp_path):
    pants = tmp_path / 'pants.json'
    pants.write_text(json.dumps({
        'vertices': [{'id': 'T1', 'kind': 'trinion'}, {'id': 'B1', 'kind': 'boundary'},
                     {'id': 'B2', 'kind': 'boundary'}, {'id': 'B3', 'kind': 'boundary'}],
        'edges': [{'id': f'b{n}', 'end0': ['T1', n], 'end1': [f'B{n}', 1]} for n in (1, 2, 3)],
    }))
    assert run(['config', 'set', 'suite.checks', '["polytope", "twist_phase"]']) == 0
    assert run(['suite', str(pants), '--quick']) == 0
    out, err = capsys.readouterr()
    assert '- skipped twist_phase: no internal edges' in err
    assert [row[0] for row in table(out)[1][1:]] == ['polytope']
