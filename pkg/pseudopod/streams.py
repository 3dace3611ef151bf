# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.streams
~~~~~~~~~~~~~~~~~

Execution fragments of transition systems, the eventually periodic
streams they give rise to, and a pointwise logic over such streams.

Streams are kept in lasso form: a finite prefix followed by a cycle that
repeats forever, or just a finite word when there is no cycle.
"""

import collections
import logging
import math
from dataclasses import dataclass
from typing import Optional

import lark

from .core import PseudopodError
from .syntax import GrammarReader, ParseError

log = logging.getLogger(__name__)

STATE = 'state'
LABEL = 'label'
TRUTH = 'truth'

KINDS = (STATE, LABEL, TRUTH)


class EmptyStream(PseudopodError, ValueError):
    """The head or derivative of an empty stream was requested."""


class IndexOutOfRange(PseudopodError, IndexError):
    """An element past the end of a finite stream was requested."""


class UnboundVariable(PseudopodError, LookupError):
    """A formula variable has no stream."""

    def __init__(self, name):
        self.name = name
        super(UnboundVariable, self).__init__("Variable '{0}' has no stream".format(name))


class PartialValuation(PseudopodError, LookupError):
    """A proposition has no truth value at a state."""

    def __init__(self, prop, state):
        self.prop = prop
        self.state = state
        super(PartialValuation, self).__init__(
            "Proposition '{0}' has no value at state {1}".format(prop, state))


class KindMismatch(PseudopodError, TypeError):
    """Streams of different element kinds were combined or compared."""


def _minimal_period(cycle):
    size = len(cycle)
    for period in range(1, size + 1):
        if size % period == 0 and cycle[:period] * (size // period) == cycle:
            return cycle[:period]
    return cycle


def _render_element(element):
    if element is True:
        return 'T'
    if element is False:
        return 'F'
    return str(element)


class RationalStream(object):
    """An immutable stream: ``prefix`` then ``cycle`` repeated forever, or
    only ``prefix`` when ``cycle`` is ``None``.

    Construction normalizes to the shortest representation, so two
    streams denote the same sequence exactly when they compare equal.
    """

    __slots__ = ('_prefix', '_cycle', '_kind')

    def __init__(self, prefix=(), cycle=None, kind=LABEL):
        if kind not in KINDS:
            raise ValueError("Unknown element kind '{0}'".format(kind))
        prefix = tuple(prefix)

        if cycle is not None:
            cycle = _minimal_period(tuple(cycle))
            if not cycle:
                raise ValueError("A stream cycle cannot be empty")
            while prefix and prefix[-1] == cycle[-1]:
                prefix = prefix[:-1]
                cycle = (cycle[-1],) + cycle[:-1]

        self._prefix = prefix
        self._cycle = cycle
        self._kind = kind

    @classmethod
    def constant(cls, element, kind=TRUTH):
        return cls((), (element,), kind)

    @property
    def prefix(self):
        return self._prefix

    @property
    def cycle(self):
        return self._cycle

    @property
    def kind(self):
        return self._kind

    @property
    def is_finite(self):
        return self._cycle is None

    @property
    def length(self):
        """Number of elements, ``None`` for infinite streams."""
        return len(self._prefix) if self.is_finite else None

    def is_empty(self):
        return self.is_finite and not self._prefix

    def head(self):
        """Get the initial value.

        :raises EmptyStream: If the stream has no elements
        """
        if self._prefix:
            return self._prefix[0]
        if self._cycle is None:
            raise EmptyStream("The empty stream has no head")
        return self._cycle[0]

    def derivative(self):
        """Get the stream without its initial value.

        :raises EmptyStream: If the stream has no elements
        """
        if self._prefix:
            return RationalStream(self._prefix[1:], self._cycle, self._kind)
        if self._cycle is None:
            raise EmptyStream("The empty stream has no derivative")
        return RationalStream((), self._cycle[1:] + self._cycle[:1], self._kind)

    def nth(self, n):
        """Get the element at (zero based) position ``n``.

        :raises IndexOutOfRange: If ``n`` is negative or past the end
        """
        if n < 0:
            raise IndexOutOfRange("Negative stream index {0}".format(n))
        if n < len(self._prefix):
            return self._prefix[n]
        if self._cycle is None:
            raise IndexOutOfRange(
                "Index {0} is past the end of a stream of length {1}".format(n, len(self._prefix)))
        return self._cycle[(n - len(self._prefix)) % len(self._cycle)]

    def take(self, count):
        """Get up to ``count`` leading elements as a tuple."""
        if self._cycle is None:
            return self._prefix[:count]
        return tuple(self.nth(i) for i in range(count))

    def map(self, func, kind):
        """Apply a function to every element, giving a stream of ``kind``."""
        cycle = None if self._cycle is None else [func(e) for e in self._cycle]
        return RationalStream([func(e) for e in self._prefix], cycle, kind)

    def _key(self):
        return self._kind, self._prefix, self._cycle

    def __eq__(self, other):
        return isinstance(other, RationalStream) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        parts = [_render_element(e) for e in self._prefix]
        if self._cycle is not None:
            parts.append('(' + ' '.join(_render_element(e) for e in self._cycle) + ')')
        return ' '.join(parts)

    def __repr__(self):
        return 'RationalStream({0!r}, {1!r}, {2!r})'.format(self._prefix, self._cycle, self._kind)


def head(stream):
    return stream.head()


def derivative(stream):
    return stream.derivative()


def nth(stream, n):
    return stream.nth(n)


@dataclass(frozen=True)
class ExecutionFragment(object):
    """States and actions of a run through a transition system.

    ``actions[i]`` leads from ``states[i]`` to ``states[i + 1]``. When
    ``loop_to`` is set the run is infinite: the last action leads from
    the last state back to ``states[loop_to]`` and the run repeats from
    there, so there are as many actions as states.
    """

    states: tuple
    actions: tuple
    loop_to: Optional[int] = None

    def __post_init__(self):
        if not self.states:
            raise ValueError("An execution fragment starts at a state")
        expected = len(self.states) - (0 if self.loop_to is not None else 1)
        if len(self.actions) != expected:
            raise ValueError("Expected {0} actions for {1} states, got {2}".format(
                expected, len(self.states), len(self.actions)))
        if self.loop_to is not None and not 0 <= self.loop_to < len(self.states):
            raise ValueError("Loop target {0} is not a state of the fragment".format(self.loop_to))

    @property
    def is_infinite(self):
        return self.loop_to is not None

    def steps(self):
        """Get the ``(source, action, target)`` steps, once each."""
        targets = list(self.states[1:])
        if self.loop_to is not None:
            targets.append(self.states[self.loop_to])
        return list(zip(self.states, self.actions, targets))

    def is_valid_in(self, lts):
        """Check that every step is a move of the given system."""
        return all((action, target) in lts.successors(source) for source, action, target in self.steps())


def _lasso(elements, loop_to, kind):
    if loop_to is None:
        return RationalStream(elements, None, kind)
    return RationalStream(elements[:loop_to], elements[loop_to:], kind)


def trace_of(fragment):
    """Get the word of actions along a fragment.

    :param ExecutionFragment fragment: Run to read
    :return: Finite word for finite runs, lasso stream for infinite ones
    :rtype: RationalStream
    """
    return _lasso(fragment.actions, fragment.loop_to, LABEL)


def state_stream(fragment):
    """Get the sequence of states visited along a fragment."""
    return _lasso(fragment.states, fragment.loop_to, STATE)


def enumerate_fragments(lts, state, bound=1000):
    """Get the maximal execution fragments starting at a state.

    A run ends when it reaches a deadlock or when its next move returns
    to a state already on it, which closes a lasso. Runs are produced
    depth first, trying moves by action text and then target id.

    :param Lts lts: System to run in
    :param int state: Start state id
    :param int bound: Most fragments to produce
    :return: The fragments, and whether more were left out
    :rtype: tuple
    """
    if not 0 <= state < len(lts):
        raise ValueError("State {0} is not part of the transition system".format(state))

    if not lts.successors(state):
        return [ExecutionFragment((state,), ())], False

    fragments = []
    path = [state]
    actions = []
    position = {state: 0}
    pending = [iter(lts.successors(state))]

    while pending:
        try:
            action, target = next(pending[-1])
        except StopIteration:
            pending.pop()
            del position[path.pop()]
            if actions:
                actions.pop()
            continue

        if target in position:
            fragment = ExecutionFragment(tuple(path), tuple(actions) + (action,), position[target])
        elif not lts.successors(target):
            fragment = ExecutionFragment(tuple(path) + (target,), tuple(actions) + (action,))
        else:
            position[target] = len(path)
            path.append(target)
            actions.append(action)
            pending.append(iter(lts.successors(target)))
            continue

        if len(fragments) >= bound:
            log.warning("Stopped after %s execution fragments from state %s", bound, state)
            return fragments, True
        fragments.append(fragment)

    return fragments, False


def state_streams(lts, state, bound=1000):
    """Get the distinct state streams of all maximal runs from a state.

    :return: Streams in the order their runs were found, and whether the
        bound cut the enumeration short
    :rtype: tuple
    """
    fragments, truncated = enumerate_fragments(lts, state, bound)
    streams = []
    seen = set()
    for fragment in fragments:
        stream = state_stream(fragment)
        if stream not in seen:
            seen.add(stream)
            streams.append(stream)
    return streams, truncated


def bounded_traces(lts, state, max_len):
    """Get every action word of length 1 to ``max_len`` from a state.

    :return: Words as tuples of labels, sorted by their text
    :rtype: list
    """
    words = set()
    frontier = {(): {state}}
    for _ in range(max_len):
        extended = collections.defaultdict(set)
        for word, sources in frontier.items():
            for source in sources:
                for action, target in lts.successors(source):
                    extended[word + (action,)].add(target)
        words.update(extended)
        frontier = extended
        if not frontier:
            break
    return sorted(words, key=lambda word: tuple(str(label) for label in word))


StreamComparison = collections.namedtuple('StreamComparison', ['equal', 'witness', 'index'])


def stream_equal(first, second):
    """Decide whether two streams are element-wise equal.

    The two streams are walked in step, remembering every pair of
    derivatives already seen. Meeting a seen pair again proves equality,
    and the visited pairs then form a bisimulation: each pair has equal
    heads and its derivatives are again in the relation (or both empty).

    :param RationalStream first: First stream
    :param RationalStream second: Second stream
    :return: ``equal``, the ``witness`` relation as a frozenset of pairs,
        and on failure the ``index`` of the first difference
    :rtype: StreamComparison
    :raises KindMismatch: If the streams hold different kinds of element
    """
    if first.kind != second.kind:
        raise KindMismatch("Cannot compare a {0} stream with a {1} stream".format(first.kind, second.kind))

    visited = set()
    index = 0
    left, right = first, second

    while (left, right) not in visited:
        if left.is_empty() or right.is_empty():
            if left.is_empty() and right.is_empty():
                break
            return StreamComparison(False, frozenset(visited), index)
        if left.head() != right.head():
            return StreamComparison(False, frozenset(visited), index)
        visited.add((left, right))
        left, right = left.derivative(), right.derivative()
        index += 1

    return StreamComparison(True, frozenset(visited), None)


class Valuation(object):
    """Truth of atomic propositions at the states of a transition system."""

    def __init__(self, values=None):
        self._values = dict(values or {})

    @classmethod
    def from_environment(cls, env):
        return cls(env.valuation)

    def truth(self, prop, state):
        """Get whether a proposition holds at a state.

        :raises PartialValuation: If the valuation says nothing about it
        """
        try:
            return self._values[(prop, state)]
        except KeyError:
            raise PartialValuation(prop, state)

    def __len__(self):
        return len(self._values)


class Formula(object):
    """Base of formula syntax trees."""

    __slots__ = ()

    def variables(self):
        """Get the names of all variables in the formula."""
        names = set()
        pending = [self]
        while pending:
            current = pending.pop()
            if isinstance(current, Var):
                names.add(current.name)
            elif isinstance(current, Not):
                pending.append(current.operand)
            elif isinstance(current, (And, Or, Implies)):
                pending.extend((current.left, current.right))
        return names

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


_CONNECTIVES = {
    And: lambda x, y: x and y,
    Or: lambda x, y: x or y,
    Implies: lambda x, y: (not x) or y,
}


_FORMULA_GRAMMAR = r'''
?start: implication

?implication: disjunction
    | disjunction "->" implication      -> implies
?disjunction: conjunction
    | disjunction "|" conjunction       -> disj
?conjunction: negation
    | conjunction "&" negation          -> conj
?negation: "!" negation                 -> neg
    | atom
?atom: IDENT                            -> var
    | "(" implication ")"

IDENT: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
'''


class _FormulaBuilder(lark.Transformer):
    # pylint: disable=missing-docstring,no-self-use

    def implies(self, children):
        return Implies(*children)

    def disj(self, children):
        return Or(*children)

    def conj(self, children):
        return And(*children)

    def neg(self, children):
        return Not(children[0])

    def var(self, children):
        name = str(children[0])
        if name == 'T':
            return Top()
        if name == 'F':
            return Bottom()
        return Var(name)


_FORMULAS = GrammarReader(_FORMULA_GRAMMAR, _FormulaBuilder())


def parse_formula(text):
    """Read a formula.

    ``T`` and ``F`` are the constants, any other identifier is a
    variable. ``!`` binds tightest, then ``&``, ``|`` and finally ``->``,
    which groups to the right.

    :raises ParseError: If the text is malformed
    :rtype: Formula
    """
    if not text.strip():
        raise ParseError("Empty formula")
    return _FORMULAS.read(text)


_IMPLIES, _OR, _AND, _NOT, _ATOM = range(1, 6)

_BINARY_SYNTAX = {
    Implies: (' -> ', _IMPLIES),
    Or: (' | ', _OR),
    And: (' & ', _AND),
}


def _formula_text(formula, min_level):
    text, level = _render_formula(formula)
    return '(' + text + ')' if level < min_level else text


def _render_formula(formula):
    if isinstance(formula, Var):
        return formula.name, _ATOM
    if isinstance(formula, Top):
        return 'T', _ATOM
    if isinstance(formula, Bottom):
        return 'F', _ATOM
    if isinstance(formula, Not):
        return '!' + _formula_text(formula.operand, _NOT), _NOT

    symbol, level = _BINARY_SYNTAX[type(formula)]
    if isinstance(formula, Implies):
        left, right = level + 1, level
    else:
        left, right = level, level + 1
    return _formula_text(formula.left, left) + symbol + _formula_text(formula.right, right), level


def format_formula(formula):
    """Get the canonical text of a formula, which parses back to it."""
    return _render_formula(formula)[0]


def _combine(first, second, func):
    if first.is_finite or second.is_finite:
        size = min(s.length for s in (first, second) if s.is_finite)
        return RationalStream([func(first.nth(i), second.nth(i)) for i in range(size)], None, TRUTH)

    start = max(len(first.prefix), len(second.prefix))
    period = len(first.cycle) * len(second.cycle) // math.gcd(len(first.cycle), len(second.cycle))
    prefix = [func(first.nth(i), second.nth(i)) for i in range(start)]
    cycle = [func(first.nth(i), second.nth(i)) for i in range(start, start + period)]
    return RationalStream(prefix, cycle, TRUTH)


def eval_formula(formula, streams, valuation, prop=None):
    """Evaluate a formula pointwise over state streams.

    Each variable names a state stream, which is turned into a truth
    stream through the valuation: by the proposition ``prop`` when
    given, and otherwise by the proposition with the variable's own name.
    The connectives are then applied element by element.

    :param Formula formula: Formula to evaluate
    :param dict streams: State stream per variable name
    :param Valuation valuation: Truth of propositions per state
    :param str prop: Proposition every variable is read through
    :return: Truth stream
    :rtype: RationalStream
    :raises UnboundVariable: If a variable has no stream
    :raises PartialValuation: If a needed truth value is missing
    """
    if isinstance(formula, Var):
        try:
            stream = streams[formula.name]
        except KeyError:
            raise UnboundVariable(formula.name)
        if stream.kind != STATE:
            raise KindMismatch("Variable '{0}' must name a state stream".format(formula.name))
        name = prop if prop is not None else formula.name
        return stream.map(lambda state: valuation.truth(name, state), TRUTH)
    if isinstance(formula, Top):
        return RationalStream.constant(True)
    if isinstance(formula, Bottom):
        return RationalStream.constant(False)
    if isinstance(formula, Not):
        return eval_formula(formula.operand, streams, valuation, prop).map(lambda x: not x, TRUTH)

    func = _CONNECTIVES[type(formula)]
    return _combine(
        eval_formula(formula.left, streams, valuation, prop),
        eval_formula(formula.right, streams, valuation, prop),
        func)
