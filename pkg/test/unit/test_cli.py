# -*- coding: utf-8 -*-
import mock
import pytest
from click.testing import CliRunner

import pseudopod.equivalence
from pseudopod.cli import main
from pseudopod.environment import Environment
from pseudopod.syntax import format_term


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write


def test_fmt(runner, write):
    result = runner.invoke(main, ['fmt', write('t.phy', '  a .  0 ')])

    assert 0 == result.exit_code
    assert 'a.0\n' == result.output


def test_fmt_keeps_definitions(runner, write):
    result = runner.invoke(main, ['fmt', write('t.phy', 'X:=a . X\nX|b.0\n')])
    assert 'X := a.X\nX | b.0\n' == result.output


def test_bisim(runner, write):
    result = runner.invoke(main, ['bisim', write('p.phy', 'a.0 + a.0'), write('q.phy', 'a.0')])

    assert 0 == result.exit_code
    assert 'bisimilar\n' == result.output


def test_not_bisimilar(runner, write):
    result = runner.invoke(main, ['bisim', write('p.phy', 'a.b.0'), write('q.phy', 'a.c.0')])

    assert 1 == result.exit_code
    assert 'not bisimilar: a b\n' == result.output


def test_bisim_with_scene(runner, write):
    scene = write('s.scene', 'universe a b\nA: a -> b\n')
    result = runner.invoke(main, ['bisim', write('p.phy', 'A(a).0'), write('q.phy', 'b.0'), scene])
    assert 0 == result.exit_code


def test_trace(runner, write):
    result = runner.invoke(main, ['trace', write('t.phy', 'a.b.0'), '--max-len', '2'])

    assert 0 == result.exit_code
    assert 'a\na b\n' == result.output


def test_normalize(runner, write):
    result = runner.invoke(main, ['normalize', write('t.phy', 'b.0 + a.0 + 0')])
    assert 'a.0 + b.0\n' == result.output


def test_lts(runner, write):
    result = runner.invoke(main, ['lts', write('t.phy', 'a.0')])

    assert 0 == result.exit_code
    assert result.output.startswith('states 2 transitions 1 root 0\n')


def test_lts_bounds(write):
    result = CliRunner(mix_stderr=False).invoke(main, ['lts', write('t.phy', 'a.0 | b.0'), '--max-states', '2'])

    assert 0 == result.exit_code
    assert result.stdout.startswith('states 2 ')
    assert 'State bound of 2 reached' in result.stderr


def test_lts_bounds_in_one_option(write):
    result = CliRunner(mix_stderr=False).invoke(
        main, ['lts', write('t.phy', 'a.b.0 | c.0'), '--bounds', 'states=3,depth=1'])

    assert 0 == result.exit_code
    assert result.stdout.startswith('states 3 ')


def test_max_flags_override_bounds_option(write):
    result = CliRunner(mix_stderr=False).invoke(
        main, ['lts', write('t.phy', 'a.0 | b.0'), '--bounds', 'states=2', '--max-states', '4'])
    assert result.stdout.startswith('states 4 ')


@pytest.mark.parametrize('bounds', ['states=0', 'width=3', 'depth=x', 'states'])
def test_bad_bounds_option(runner, write, bounds):
    result = runner.invoke(main, ['trace', write('t.phy', 'a.0'), '--bounds', bounds])
    assert 2 == result.exit_code


def test_lts_dot_to_file(runner, write, tmp_path):
    out = tmp_path / 'out.dot'
    result = runner.invoke(main, ['lts', write('t.phy', 'X := a.X\nX'), '--dot', '-o', str(out)])

    assert 0 == result.exit_code
    assert '' == result.output
    assert out.read_text(encoding='utf-8').startswith('digraph lts {')


def test_lts_diffusion(runner, write):
    result = runner.invoke(main, ['lts', write('t.phy', 'a.c.0 & b.0'), '--diffusion'])

    assert 0 == result.exit_code
    assert 'ChoiceL' in result.output


def test_eval(runner, write):
    formulas = write('f.formula', 'p\n# comment\n!p\np | !p\n')
    scene = write('s.scene', 'prop p 0 T\nprop p 1 F\n')
    result = runner.invoke(main, ['eval', formulas, scene, '--term', write('t.phy', 'a.0')])

    assert 0 == result.exit_code
    assert 'p: T F\n!p: F T\np | !p: T T\n' == result.output


def test_eval_on_a_cycle(runner, write):
    scene = write('s.scene', 'prop p 0 T\nprop p 1 F\n')
    result = runner.invoke(main, ['eval', write('f.formula', 'p'), scene, '--term', write('t.phy', 'X := a.b.X\nX')])
    assert 'p: (T F)\n' == result.output


def test_eval_missing_path(runner, write):
    scene = write('s.scene', 'prop p 0 T\n')
    result = runner.invoke(main, ['eval', write('f.formula', 'p'), scene,
                                  '--term', write('t.phy', '0'), '--path-index', '3'])
    assert 3 == result.exit_code


def test_eval_bad_formula_line(runner, write):
    scene = write('s.scene', '')
    result = runner.invoke(main, ['eval', write('f.formula', 'p\n\np &'), scene, '--term', write('t.phy', '0')])

    assert 3 == result.exit_code
    assert 'error:' in result.output


def test_laws(runner):
    result = runner.invoke(main, ['laws', '--samples', '2'])
    lines = result.output.splitlines()

    assert 0 == result.exit_code
    assert 'law 1 holds 2/2' == lines[0]
    assert 14 == len([line for line in lines if line.startswith('law ')])


def test_default_conformance_counterexamples_replay_with_bisim(runner, write):
    report = pseudopod.equivalence.law_conformance(seed=0, samples=50)
    failing = report.failing()

    assert all(50 == result.total for result in report.results)
    assert {2, 4} <= set(result.law for result in failing)

    for result in failing:
        for number, (lhs, rhs) in enumerate(result.counterexamples):
            first = write('law{0}-{1}-lhs.phy'.format(result.law, number), format_term(lhs))
            second = write('law{0}-{1}-rhs.phy'.format(result.law, number), format_term(rhs))
            replayed = runner.invoke(main, ['bisim', first, second])

            assert 1 == replayed.exit_code, replayed.output
            assert 'not bisimilar:' in replayed.output


def test_parse_error_exit_status(runner, write):
    result = runner.invoke(main, ['fmt', write('t.phy', 'a.')])

    assert 3 == result.exit_code
    assert result.output.startswith('error: ')


def test_missing_file(runner, tmp_path):
    result = runner.invoke(main, ['normalize', str(tmp_path / 'nowhere.phy')])
    assert 3 == result.exit_code


def test_bad_scene(runner, write):
    result = runner.invoke(main, ['lts', write('t.phy', 'a.0'), write('s.scene', 'frobnicate')])
    assert 3 == result.exit_code


def test_unguarded_recursion(runner, write):
    result = runner.invoke(main, ['lts', write('t.phy', 'X := X\nX')])
    assert 3 == result.exit_code


def test_usage_error(runner, write):
    result = runner.invoke(main, ['trace', write('t.phy', 'a.0'), '--max-len', '0'])
    assert 2 == result.exit_code


def test_unknown_command(runner):
    assert 2 == runner.invoke(main, ['frobnicate']).exit_code


def test_verbose(runner, write):
    result = runner.invoke(main, ['-vv', 'fmt', write('t.phy', 'a.0')])
    assert 0 == result.exit_code


def test_laws_passes_generation_parameters(runner):
    report = mock.Mock(spec=pseudopod.equivalence.ConformanceReport)
    report.to_text.return_value = 'law 1 holds 1/1\n'

    with mock.patch('pseudopod.cli.law_conformance', return_value=report) as conformance:
        result = runner.invoke(main, ['laws', '--seed', '7', '--samples', '1', '--depth', '2', '--alphabet', '4'])

    assert 'law 1 holds 1/1\n' == result.output
    conformance.assert_called_once_with(7, 1, 2, 4, Environment())


def test_unreadable_input(runner, write):
    path = write('t.phy', 'a.0')
    with mock.patch('pseudopod.cli._read', side_effect=PermissionError('denied')):
        result = runner.invoke(main, ['fmt', path])

    assert 3 == result.exit_code
    assert 'error: denied\n' == result.output
