# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.environment
~~~~~~~~~~~~~~~~~~~~~

The scene a process runs in: the declared alphabet, attractant and
repellent tables, diffusion bindings, constant definitions, exploration
bounds, and the per state annotations used by formulas and exports.

Scene files are line oriented. Supported directives::

    universe a b c            # declare activator names
    A: a -> b                 # attractant table row
    R: a -> ~c                # repellent table row
    C: a := b.0               # diffusion binding
    X := a.X                  # constant definition
    bound states 500          # exploration bounds (also depth, unfold)
    prop p 0 T                # truth of proposition p at state 0
    cell 0 1 2                # state 0 is species 1 in cell 2
"""

import logging
import re

from .core import Bounds, PseudopodError, significant_lines
from .syntax import (
    Label,
    LabelSet,
    ParseError,
    UnresolvedConstant,
    format_term,
    free_constants,
    parse)

log = logging.getLogger(__name__)

_TRUTH = {'T': True, 'F': False}

_TABLE_ROW = re.compile(r'^([AR])\s*:\s*(\S+)\s*->\s*(\S+)$')
_DIFFUSION_ROW = re.compile(r'^C\s*:\s*(\S+)\s*:=\s*(.*)$')
_CONSTANT_ROW = re.compile(r'^([A-Z][A-Za-z0-9_]*)\s*:=\s*(.*)$')

_BOUND_FIELDS = {
    'states': 'max_states',
    'depth': 'max_depth',
    'unfold': 'max_unfold',
}


class SceneError(PseudopodError, ValueError):
    """A scene file could not be turned into an environment.

    :ivar int line_number: One-based line the problem was found on, if any
    :ivar str line: Text of that line
    """

    def __init__(self, message, line_number=None, line=None):
        self.line_number = line_number
        self.line = line
        if line_number is not None:
            message = 'line {0}: {1}'.format(line_number, message)
        super(SceneError, self).__init__(message)


class DefinitionConflict(PseudopodError, ValueError):
    """A constant was given two different bodies."""

    def __init__(self, name, existing, proposed):
        self.name = name
        self.existing = existing
        self.proposed = proposed
        super(DefinitionConflict, self).__init__(
            "Constant '{0}' is already defined as '{1}', not '{2}'".format(
                name, format_term(existing), format_term(proposed)))


class DiffusionConflict(PseudopodError, ValueError):
    """A diffusion label was bound to two different continuations."""

    def __init__(self, label, existing, proposed):
        self.label = label
        self.existing = existing
        self.proposed = proposed
        super(DiffusionConflict, self).__init__(
            "C({0}) is already bound to '{1}', not '{2}'".format(
                label, format_term(existing), format_term(proposed)))


class Environment(object):
    """Immutable collection of everything a term needs besides itself
    to be explored.

    Mutating operations return a new environment and leave this one
    untouched, so an environment can be shared freely.
    """

    __slots__ = ('_universe', '_attract', '_repel', '_diffusion', '_constants',
                 '_bounds', '_valuation', '_coordinates')

    def __init__(self, universe=None, attract=None, repel=None, diffusion=None,
                 constants=None, bounds=None, valuation=None, coordinates=None):
        self._universe = universe if universe is not None else LabelSet()
        self._attract = dict(attract or {})
        self._repel = dict(repel or {})
        self._diffusion = dict(diffusion or {})
        self._constants = dict(constants or {})
        self._bounds = bounds if bounds is not None else Bounds()
        self._valuation = dict(valuation or {})
        self._coordinates = dict(coordinates or {})

        for label in self._universe:
            if label.inhibitor:
                raise ValueError("The universe holds activators only, got '{0}'".format(label))

    def _copy(self, **changes):
        fields = {
            'universe': self._universe,
            'attract': self._attract,
            'repel': self._repel,
            'diffusion': self._diffusion,
            'constants': self._constants,
            'bounds': self._bounds,
            'valuation': self._valuation,
            'coordinates': self._coordinates,
        }
        fields.update(changes)
        return Environment(**fields)

    @property
    def universe(self):
        return self._universe

    @property
    def attract(self):
        return dict(self._attract)

    @property
    def repel(self):
        return dict(self._repel)

    @property
    def diffusion(self):
        return dict(self._diffusion)

    @property
    def constants(self):
        return dict(self._constants)

    @property
    def bounds(self):
        return self._bounds

    @property
    def valuation(self):
        """Truth of atomic propositions, keyed by ``(name, state_id)``."""
        return dict(self._valuation)

    @property
    def coordinates(self):
        """``(species, cell)`` annotations of LTS states, keyed by state id."""
        return dict(self._coordinates)

    def lookup_attract(self, label):
        """Get the label an attractant turns ``label`` into, or ``None``."""
        return self._attract.get(label)

    def lookup_repel(self, label):
        """Get the label a repellent turns ``label`` into, or ``None``."""
        return self._repel.get(label)

    def lookup_diffusion(self, label):
        """Get the continuation ``C(label)`` is bound to, or ``None``."""
        return self._diffusion.get(label)

    def resolve_constant(self, name):
        """Get the body of a constant.

        :raises UnresolvedConstant: If there is no such constant
        """
        try:
            return self._constants[name]
        except KeyError:
            raise UnresolvedConstant(name)

    def bind_diffusion(self, label, term):
        """Get an environment in which ``C(label)`` behaves like ``term``.

        Binding a label to the term it is already bound to returns this
        same environment.

        :raises DiffusionConflict: If the label is bound to another term
        """
        existing = self._diffusion.get(label)
        if existing is not None:
            if existing == term:
                return self
            raise DiffusionConflict(label, existing, term)
        diffusion = dict(self._diffusion)
        diffusion[label] = term
        return self._copy(diffusion=diffusion)

    def define(self, name, term):
        """Get an environment with one more constant.

        Repeating an identical definition returns this same environment.

        :raises DefinitionConflict: If the constant has a different body
        """
        existing = self._constants.get(name)
        if existing is not None:
            if existing == term:
                return self
            raise DefinitionConflict(name, existing, term)
        constants = dict(self._constants)
        constants[name] = term
        return self._copy(constants=constants)

    def with_bounds(self, bounds):
        return self._copy(bounds=bounds)

    def with_universe(self, universe):
        return self._copy(universe=universe)

    def _key(self):
        return (self._universe, self._attract, self._repel, self._diffusion,
                self._constants, self._bounds, self._valuation, self._coordinates)

    def __eq__(self, other):
        return isinstance(other, Environment) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return 'Environment(universe={0}, constants={1})'.format(
            self._universe, sorted(self._constants))


def lookup_attract(env, label):
    """Get the label ``A(label)`` turns into in the given environment, or
    ``None`` if the attractant is undefined there.
    """
    return env.lookup_attract(label)


def lookup_repel(env, label):
    """Get the label ``R(label)`` turns into, or ``None``."""
    return env.lookup_repel(label)


def bind_diffusion(env, label, term):
    return env.bind_diffusion(label, term)


def resolve_constant(env, name):
    return env.resolve_constant(name)


class _SceneReader(object):
    """Accumulates the directives of one scene file."""

    def __init__(self, lines):
        self._lines = lines
        self.universe = set()
        self.attract = {}
        self.repel = {}
        self.diffusion = {}
        self.constants = {}
        self.bounds = {}
        self.valuation = {}
        self.coordinates = {}
        self._origins = {}

    def read(self):
        # Universe lines are read first so that directive order does not matter
        rest = []
        for number, line in self._lines:
            words = line.split()
            if words[0] == 'universe':
                self._universe(number, line, words[1:])
            else:
                rest.append((number, line))

        for number, line in rest:
            self._directive(number, line)

        self._check_constants()
        log.debug("Read %s scene directives", len(self._lines))

    def _universe(self, number, line, names):
        for name in names:
            try:
                label = Label(name)
            except ValueError as e:
                raise SceneError(str(e), number, line)
            self.universe.add(label)

    def _directive(self, number, line):
        # pylint: disable=too-many-return-statements
        match = _TABLE_ROW.match(line)
        if match is not None:
            table = self.attract if match.group(1) == 'A' else self.repel
            return self._table_row(table, match, number, line)

        match = _DIFFUSION_ROW.match(line)
        if match is not None:
            label = self._label(match.group(1), number, line, declared=False)
            if label in self.diffusion:
                raise SceneError("C({0}) is bound twice".format(label), number, line)
            self.diffusion[label] = self._term(match.group(2), number, line, match.start(2))
            self._origins[('C', label)] = (number, line)
            return None

        match = _CONSTANT_ROW.match(line)
        if match is not None:
            name = match.group(1)
            if name in self.constants:
                raise SceneError("Constant '{0}' is defined twice".format(name), number, line)
            self.constants[name] = self._term(match.group(2), number, line, match.start(2))
            self._origins[name] = (number, line)
            return None

        words = line.split()
        if words[0] == 'bound':
            return self._bound(words, number, line)
        if words[0] == 'prop':
            return self._prop(words, number, line)
        if words[0] == 'cell':
            return self._cell(words, number, line)

        raise SceneError("Unknown directive '{0}'".format(words[0]), number, line)

    def _label(self, text, number, line, declared=True):
        try:
            label = Label.parse(text)
        except ValueError as e:
            raise SceneError(str(e), number, line)
        if declared and (label.is_tau or label.base() not in self.universe):
            raise SceneError("Label '{0}' is not declared in the universe".format(label), number, line)
        return label

    def _table_row(self, table, match, number, line):
        source = self._label(match.group(2), number, line)
        target = self._label(match.group(3), number, line)
        if source in table and table[source] != target:
            raise SceneError("{0}({1}) is defined twice".format(match.group(1), source), number, line)
        table[source] = target

    def _term(self, text, number, line, offset):
        try:
            return parse(text)
        except ParseError as e:
            raise SceneError(str(e.moved(number, offset)), number, line)

    def _bound(self, words, number, line):
        if len(words) != 3 or words[1] not in _BOUND_FIELDS:
            raise SceneError("Expected 'bound states|depth|unfold <n>'", number, line)
        value = self._positive(words[2], number, line)
        self.bounds[_BOUND_FIELDS[words[1]]] = value

    def _prop(self, words, number, line):
        if len(words) != 4 or words[3] not in _TRUTH:
            raise SceneError("Expected 'prop <name> <state-id> <T|F>'", number, line)
        state = self._natural(words[2], number, line)
        key = (words[1], state)
        value = _TRUTH[words[3]]
        if key in self.valuation and self.valuation[key] != value:
            raise SceneError("Proposition '{0}' is given two values at state {1}".format(
                words[1], state), number, line)
        self.valuation[key] = value

    def _cell(self, words, number, line):
        if len(words) != 4:
            raise SceneError("Expected 'cell <state-id> <species> <cell>'", number, line)
        state, species, cell = [self._natural(word, number, line) for word in words[1:]]
        self.coordinates[state] = (species, cell)

    @staticmethod
    def _natural(text, number, line):
        if not text.isdigit():
            raise SceneError("Expected a non-negative integer, got '{0}'".format(text), number, line)
        return int(text)

    def _positive(self, text, number, line):
        value = self._natural(text, number, line)
        if value == 0:
            raise SceneError("Bounds must be positive", number, line)
        return value

    def _check_constants(self):
        bodies = [(name, body) for name, body in self.constants.items()]
        bodies.extend((('C', label), body) for label, body in self.diffusion.items())
        for key, body in bodies:
            missing = sorted(free_constants(body) - set(self.constants))
            if missing:
                number, line = self._origins[key]
                raise SceneError("Constant '{0}' is not defined".format(missing[0]), number, line)


def load_scene(text):
    """Read a scene file into an environment.

    Loading is all or nothing: either every directive is valid or no
    environment is produced.

    :param str text: Contents of the scene file
    :return: The environment the scene describes
    :rtype: Environment
    :raises SceneError: Naming the first offending line
    """
    reader = _SceneReader(significant_lines(text))
    reader.read()

    try:
        bounds = Bounds().replace(**reader.bounds)
    except ValueError as e:
        raise SceneError(str(e))

    return Environment(
        universe=LabelSet(reader.universe),
        attract=reader.attract,
        repel=reader.repel,
        diffusion=reader.diffusion,
        constants=reader.constants,
        bounds=bounds,
        valuation=reader.valuation,
        coordinates=reader.coordinates)


def dump_scene(env):
    """Get the canonical scene text of an environment.

    Loading the result gives back an equal environment.

    :param Environment env: Environment to write out
    :rtype: str
    """
    lines = []
    if len(env.universe):
        lines.append('universe ' + ' '.join(label.name for label in env.universe))
    for prefix, table in (('A', env.attract), ('R', env.repel)):
        for source in sorted(table, key=str):
            lines.append('{0}: {1} -> {2}'.format(prefix, source, table[source]))
    diffusion = env.diffusion
    for label in sorted(diffusion, key=str):
        lines.append('C: {0} := {1}'.format(label, format_term(diffusion[label])))
    constants = env.constants
    for name in sorted(constants):
        lines.append('{0} := {1}'.format(name, format_term(constants[name])))

    defaults = Bounds()
    for word, field in sorted(_BOUND_FIELDS.items()):
        value = getattr(env.bounds, field)
        if value != getattr(defaults, field):
            lines.append('bound {0} {1}'.format(word, value))

    for (name, state), value in sorted(env.valuation.items()):
        lines.append('prop {0} {1} {2}'.format(name, state, 'T' if value else 'F'))
    for state, (species, cell) in sorted(env.coordinates.items()):
        lines.append('cell {0} {1} {2}'.format(state, species, cell))

    return '\n'.join(lines) + '\n' if lines else ''
