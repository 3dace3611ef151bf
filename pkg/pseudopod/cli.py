# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.cli
~~~~~~~~~~~~~

The ``pseudopod`` command.

Exit status is 0 on success, 1 when ``bisim`` finds the terms are not
bisimilar, 2 for usage errors and 3 for unreadable or invalid input.
"""

import functools
import io
import logging
import sys

import click

from .core import PseudopodError, significant_lines
from .environment import Environment, load_scene
from .equivalence import bisimilar, law_conformance, normalize
from .semantics import build_lts
from .streams import (
    Valuation,
    bounded_traces,
    eval_formula,
    format_formula,
    parse_formula,
    state_streams)
from .syntax import ParseError, format_program, format_term, parse_program

log = logging.getLogger(__name__)

EXIT_NOT_BISIMILAR = 1
EXIT_INPUT_ERROR = 3

_LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def _read(path):
    with io.open(path, 'r', encoding='utf-8') as handle:
        return handle.read()


def _input_errors(func):
    """Report bad input as a single ``error:`` line and exit with status 3."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (PseudopodError, OSError) as e:
            click.echo('error: {0}'.format(e), err=True)
            click.get_current_context().exit(EXIT_INPUT_ERROR)
        return None
    return wrapper


def _scene(path):
    if path is None:
        return Environment()
    return load_scene(_read(path))


def _with_program(env, program):
    for name, body in program.definitions:
        env = env.define(name, body)
    return env


def _with_bounds(env, bounds=None, max_states=None, max_depth=None, max_unfold=None):
    changes = dict(bounds or {})
    flags = {'max_states': max_states, 'max_depth': max_depth, 'max_unfold': max_unfold}
    changes.update((name, value) for name, value in flags.items() if value is not None)
    return env.with_bounds(env.bounds.replace(**changes))


def _emit(text, output):
    if output is None:
        click.echo(text, nl=False)
    else:
        output.write(text)


class BoundsType(click.ParamType):
    """Exploration bounds written as ``states=N,depth=N,unfold=N``."""

    name = 'bounds'
    _keys = {'states': 'max_states', 'depth': 'max_depth', 'unfold': 'max_unfold'}

    def convert(self, value, param, ctx):
        if isinstance(value, dict):
            return value
        bounds = {}
        for item in value.split(','):
            key, _, number = item.strip().partition('=')
            if key not in self._keys:
                self.fail("Unknown bound '{0}', expected one of states, depth, unfold".format(key), param, ctx)
            if not number.isdigit() or int(number) < 1:
                self.fail("Bound '{0}' must be a positive integer, got '{1}'".format(key, number), param, ctx)
            bounds[self._keys[key]] = int(number)
        return bounds


_bound_options = [
    click.option('--bounds', type=BoundsType(), default=None, metavar='states=N,depth=N,unfold=N',
                 help='Exploration bounds in one option, any subset of them. '
                      'The --max-* options override it.'),
    click.option('--max-states', type=click.IntRange(min=1), default=None,
                 help='Most states to explore (default: scene value or 10000).'),
    click.option('--max-depth', type=click.IntRange(min=1), default=None,
                 help='Deepest breadth-first level to expand (default: scene value or 1000).'),
    click.option('--max-unfold', type=click.IntRange(min=1), default=None,
                 help='Most nested constant unfoldings per derivation (default: scene value or 64).'),
]


def bound_options(func):
    for option in reversed(_bound_options):
        func = option(func)
    return func


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.option('-v', '--verbose', count=True, help='Log progress to stderr; repeat for more detail.')
def main(verbose):
    """Explore, compare and normalize process terms."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    root = logging.getLogger('pseudopod')
    root.handlers = [handler]
    root.setLevel(_LOG_LEVELS[min(verbose, len(_LOG_LEVELS) - 1)])


@main.command('fmt')
@click.argument('term_file', type=click.Path(dir_okay=False))
@_input_errors
def cmd_fmt(term_file):
    """Print a term file in canonical form."""
    click.echo(format_program(parse_program(_read(term_file))), nl=False)


@main.command('lts')
@click.argument('term_file', type=click.Path(dir_okay=False))
@click.argument('scene_file', type=click.Path(dir_okay=False), required=False)
@bound_options
@click.option('--diffusion', is_flag=True, help='Bind C(a) to the target of every a transition found.')
@click.option('--dot', 'export', flag_value='dot', help='Write a Graphviz digraph.')
@click.option('--lts', 'export', flag_value='lts', default=True, help='Write the line oriented .lts format (default).')
@click.option('-o', '--output', type=click.File('w', encoding='utf-8'), default=None,
              help='Write to this file instead of standard output.')
@_input_errors
def cmd_lts(term_file, scene_file, bounds, max_states, max_depth, max_unfold, diffusion, export, output):
    """Build the transition system of a term."""
    program = parse_program(_read(term_file))
    env = _with_bounds(_with_program(_scene(scene_file), program), bounds, max_states, max_depth, max_unfold)
    lts = build_lts(program.root, env, diffusion=diffusion)
    _emit(lts.to_dot() if export == 'dot' else lts.to_text(), output)


@main.command('bisim')
@click.argument('first_file', type=click.Path(dir_okay=False))
@click.argument('second_file', type=click.Path(dir_okay=False))
@click.argument('scene_file', type=click.Path(dir_okay=False), required=False)
@bound_options
@_input_errors
def cmd_bisim(first_file, second_file, scene_file, bounds, max_states, max_depth, max_unfold):
    """Check whether the roots of two term files are strongly bisimilar.

    Exits with status 1 when they are not.
    """
    first = parse_program(_read(first_file))
    second = parse_program(_read(second_file))
    env = _with_program(_with_program(_scene(scene_file), first), second)
    env = _with_bounds(env, bounds, max_states, max_depth, max_unfold)

    verdict = bisimilar(first.root, second.root, env)
    if verdict.approximate:
        log.warning("Exploration was truncated, the verdict may be wrong")
    if verdict.bisimilar:
        click.echo('bisimilar')
        return
    click.echo('not bisimilar: {0}'.format(' '.join(str(action) for action in verdict.actions)))
    click.get_current_context().exit(EXIT_NOT_BISIMILAR)


@main.command('normalize')
@click.argument('term_file', type=click.Path(dir_okay=False))
@_input_errors
def cmd_normalize(term_file):
    """Print the normal form of the root of a term file."""
    program = parse_program(_read(term_file))
    click.echo(format_term(normalize(program.root)))


def _formulas(text):
    formulas = []
    for number, line in significant_lines(text):
        try:
            formulas.append(parse_formula(line))
        except ParseError as e:
            raise e.moved(number)
    return formulas


@main.command('eval')
@click.argument('formula_file', type=click.Path(dir_okay=False))
@click.argument('scene_file', type=click.Path(dir_okay=False))
@click.option('--term', 'term_file', type=click.Path(dir_okay=False), required=True,
              help='Term file whose transition system supplies the state streams.')
@click.option('--state', type=click.IntRange(min=0), default=0, show_default=True,
              help='State the execution fragments start from.')
@click.option('--path-index', type=click.IntRange(min=0), default=0, show_default=True,
              help='Which of the state streams from that state to evaluate on.')
@click.option('--depth', type=click.IntRange(min=1), default=None,
              help='Deepest breadth-first level to explore (default: scene value or 1000).')
@_input_errors
def cmd_eval(formula_file, scene_file, term_file, state, path_index, depth):
    """Evaluate formulas pointwise along one execution of a term.

    Every variable is read through the proposition of the same name given
    by 'prop' lines of the scene.
    """
    formulas = _formulas(_read(formula_file))
    program = parse_program(_read(term_file))
    env = _with_bounds(_with_program(_scene(scene_file), program), max_depth=depth)
    lts = build_lts(program.root, env)

    if state >= len(lts):
        raise PseudopodError("State {0} is not part of the transition system of {1} states".format(
            state, len(lts)))
    streams, _ = state_streams(lts, state)
    if path_index >= len(streams):
        raise PseudopodError("State {0} has only {1} state streams".format(state, len(streams)))

    stream = streams[path_index]
    valuation = Valuation.from_environment(env)
    for formula in formulas:
        bound = {name: stream for name in formula.variables()}
        click.echo('{0}: {1}'.format(format_formula(formula), eval_formula(formula, bound, valuation)))


@main.command('laws')
@click.argument('scene_file', type=click.Path(dir_okay=False), required=False)
@click.option('--seed', type=int, default=0, show_default=True, help='Seed of the instantiation sampler.')
@click.option('--samples', type=click.IntRange(min=0), default=50, show_default=True,
              help='Instantiations per law.')
@click.option('--depth', type=click.IntRange(min=1), default=3, show_default=True,
              help='Largest depth of sampled terms.')
@click.option('--alphabet', type=click.IntRange(min=1, max=26), default=3, show_default=True,
              help='Number of label names sampled terms draw from.')
@_input_errors
def cmd_laws(scene_file, seed, samples, depth, alphabet):
    """Report which equations of the calculus hold under bisimilarity."""
    report = law_conformance(seed, samples, depth, alphabet, _scene(scene_file))
    click.echo(report.to_text(), nl=False)


@main.command('trace')
@click.argument('term_file', type=click.Path(dir_okay=False))
@click.argument('scene_file', type=click.Path(dir_okay=False), required=False)
@click.option('--state', type=click.IntRange(min=0), default=0, show_default=True,
              help='State the traces start from.')
@click.option('--max-len', type=click.IntRange(min=1), default=6, show_default=True,
              help='Longest trace to list.')
@bound_options
@_input_errors
def cmd_trace(term_file, scene_file, state, max_len, bounds, max_states, max_depth, max_unfold):
    """List every action sequence of a term up to a length."""
    program = parse_program(_read(term_file))
    env = _with_bounds(_with_program(_scene(scene_file), program), bounds, max_states, max_depth, max_unfold)
    lts = build_lts(program.root, env)
    if state >= len(lts):
        raise PseudopodError("State {0} is not part of the transition system of {1} states".format(
            state, len(lts)))
    for word in bounded_traces(lts, state, max_len):
        click.echo(' '.join(str(action) for action in word))
