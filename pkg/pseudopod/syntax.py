# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.syntax
~~~~~~~~~~~~~~~~

Labels, process terms, and their concrete textual syntax.

The concrete syntax, tightest binding first::

    a.P   ~a.P   tau.P   A(a).P   R(a).P      prefixes
    P \\ {a, b}                                 hiding
    P | Q                                      cooperation
    P & Q                                      fusion
    P + Q                                      choice

Atoms are ``0`` (inaction), ``C(a)`` (diffusion), constants (identifiers
starting with an uppercase letter) and parenthesised terms. All binary
operators associate to the left.
"""

import functools
import re
from dataclasses import dataclass
from typing import Optional

import lark
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from .core import PseudopodError, significant_lines

ACTIVATOR = 'activator'
INHIBITOR = 'inhibitor'
TAU_NAME = 'tau'

NAME_PATTERN = re.compile(r'^[a-z][A-Za-z0-9_]*$')
CONSTANT_PATTERN = re.compile(r'^[A-Z][A-Za-z0-9_]*$')
DEFINITION_PATTERN = re.compile(r'^([A-Z][A-Za-z0-9_]*)\s*:=\s*(.*)$')


class ParseError(PseudopodError, ValueError):
    """Malformed term or formula text.

    :ivar int line: One-based line of the offending input, if known
    :ivar int column: One-based column of the offending input, if known
    :ivar tuple expected: Sorted descriptions of what would have been
        accepted at that position
    """

    def __init__(self, message, line=None, column=None, expected=()):
        self.reason = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        super(ParseError, self).__init__(self._render())

    def _render(self):
        parts = []
        if self.line is not None:
            parts.append('line {0}, column {1}: '.format(self.line, self.column))
        parts.append(self.reason)
        if self.expected:
            parts.append(' (expected one of: {0})'.format(', '.join(self.expected)))
        return ''.join(parts)

    def moved(self, line, column_offset=0):
        """Get a copy of this error reported at another line of a file.

        :param int line: Line number within the enclosing file
        :param int column_offset: Characters before the parsed text on
            that line
        :return: Relocated error
        :rtype: ParseError
        """
        column = self.column + column_offset if self.column is not None else None
        return ParseError(self.reason, line, column, self.expected)


class UnresolvedConstant(PseudopodError, LookupError):
    """A constant was used without a definition to unfold it to."""

    def __init__(self, name):
        self.name = name
        super(UnresolvedConstant, self).__init__("Constant '{0}' is not defined".format(name))


@dataclass(frozen=True)
class Label(object):
    """A named action with a polarity, or the internal action tau.

    The tau label has neither a name nor a polarity.
    """

    name: Optional[str] = None
    inhibitor: bool = False

    def __post_init__(self):
        if self.name is None:
            if self.inhibitor:
                raise ValueError("The internal action has no polarity")
            return
        if self.name == TAU_NAME:
            raise ValueError("'{0}' is reserved for the internal action".format(TAU_NAME))
        if not NAME_PATTERN.match(self.name):
            raise ValueError("Invalid label name '{0}'".format(self.name))

    @property
    def is_tau(self):
        return self.name is None

    @property
    def polarity(self):
        """``'activator'``, ``'inhibitor'``, or ``None`` for tau."""
        if self.is_tau:
            return None
        return INHIBITOR if self.inhibitor else ACTIVATOR

    def complement(self):
        """Get the label of opposite polarity with the same name.

        :raises ValueError: For tau, which has no complement
        :rtype: Label
        """
        if self.is_tau:
            raise ValueError("The internal action has no complement")
        return Label(self.name, not self.inhibitor)

    def base(self):
        """Get the activator with the same name as this label."""
        if self.is_tau:
            raise ValueError("The internal action has no name")
        return Label(self.name)

    @classmethod
    def parse(cls, text):
        """Read a label written as ``a``, ``~a`` or ``tau``.

        :raises ValueError: If the text is not a label
        :rtype: Label
        """
        text = text.strip()
        if text == TAU_NAME:
            return TAU
        if text.startswith('~'):
            name = text[1:].strip()
            if name == TAU_NAME:
                raise ValueError("The internal action has no complement")
            return cls(name, True)
        return cls(text)

    def __str__(self):
        if self.is_tau:
            return TAU_NAME
        return '~' + self.name if self.inhibitor else self.name


TAU = Label()


class LabelSet(object):
    """An immutable finite set of named labels."""

    __slots__ = ('_members',)

    def __init__(self, members=()):
        members = frozenset(members)
        for member in members:
            if not isinstance(member, Label):
                raise ValueError("Label sets hold labels, got {0!r}".format(member))
            if member.is_tau:
                raise ValueError("The internal action cannot be part of a label set")
        self._members = members

    @classmethod
    def of(cls, *texts):
        """Build a set from labels written as text, e.g. ``LabelSet.of('a', '~b')``."""
        return cls(Label.parse(text) for text in texts)

    @property
    def members(self):
        return self._members

    def names(self):
        """Get the set of names used by the labels, regardless of polarity."""
        return frozenset(member.name for member in self._members)

    def complement(self, universe):
        """Get every label of the universe that is not in this set."""
        return LabelSet(universe.members - self._members)

    def issubset(self, other):
        return self._members <= other.members

    def __or__(self, other):
        return LabelSet(self._members | other.members)

    def __and__(self, other):
        return LabelSet(self._members & other.members)

    def __sub__(self, other):
        return LabelSet(self._members - other.members)

    def __iter__(self):
        return iter(sorted(self._members, key=str))

    def __len__(self):
        return len(self._members)

    def __contains__(self, label):
        return label in self._members

    def __eq__(self, other):
        return isinstance(other, LabelSet) and self._members == other.members

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._members)

    def __str__(self):
        return '{' + ', '.join(str(member) for member in self) + '}'

    def __repr__(self):
        return 'LabelSet({0})'.format(self)


class Term(object):
    """Base of all process terms. Terms are immutable, hashable values."""

    __slots__ = ()

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class Nil(Term):
    """The deadlocked process."""


@dataclass(frozen=True)
class Prefix(Term):
    label: Label
    body: Term


@dataclass(frozen=True)
class Attract(Term):
    arg: Label
    body: Term

    def __post_init__(self):
        _require_named(self.arg, 'Attraction')


@dataclass(frozen=True)
class Repel(Term):
    arg: Label
    body: Term

    def __post_init__(self):
        _require_named(self.arg, 'Repelling')


@dataclass(frozen=True)
class Diffuse(Term):
    arg: Label


@dataclass(frozen=True)
class Coop(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Hide(Term):
    body: Term
    hidden: LabelSet


@dataclass(frozen=True)
class Fuse(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Choice(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Const(Term):
    name: str

    def __post_init__(self):
        if not CONSTANT_PATTERN.match(self.name):
            raise ValueError("Invalid constant name '{0}'".format(self.name))


NIL = Nil()

BINARY = (Coop, Fuse, Choice)


def _require_named(label, what):
    if label.is_tau:
        raise ValueError("{0} needs a named label, not {1}".format(what, TAU_NAME))


# Precedence levels used when printing, loosest first.
_CHOICE, _FUSE, _COOP, _HIDE, _PREFIX, _ATOM = range(1, 7)

_OPERATORS = {
    Choice: (' + ', _CHOICE),
    Fuse: (' & ', _FUSE),
    Coop: (' | ', _COOP),
}


def _wrap(term, min_level):
    text, level = _render(term)
    if level < min_level:
        return '(' + text + ')'
    return text


def _render(term):
    # pylint: disable=too-many-return-statements
    if isinstance(term, Nil):
        return '0', _ATOM
    if isinstance(term, Const):
        return term.name, _ATOM
    if isinstance(term, Diffuse):
        return 'C({0})'.format(term.arg), _ATOM
    if isinstance(term, Prefix):
        return '{0}.{1}'.format(term.label, _wrap(term.body, _PREFIX)), _PREFIX
    if isinstance(term, Attract):
        return 'A({0}).{1}'.format(term.arg, _wrap(term.body, _PREFIX)), _PREFIX
    if isinstance(term, Repel):
        return 'R({0}).{1}'.format(term.arg, _wrap(term.body, _PREFIX)), _PREFIX
    if isinstance(term, Hide):
        return '{0} \\ {1}'.format(_wrap(term.body, _HIDE), term.hidden), _HIDE
    if isinstance(term, BINARY):
        symbol, level = _OPERATORS[type(term)]
        # left associative: only the right operand needs parentheses at
        # the same level
        text = _wrap(term.left, level) + symbol + _wrap(term.right, level + 1)
        return text, level
    raise TypeError("Not a process term: {0!r}".format(term))


@functools.lru_cache(maxsize=65536)
def format_term(term):
    """Get the canonical text of a term.

    The text uses the fewest parentheses the precedence rules allow and
    single spaces around binary operators, so that parsing it gives back
    a structurally identical term.

    :param Term term: Term to print
    :return: Canonical text
    :rtype: str
    """
    return _render(term)[0]


_GRAMMAR = r'''
?start: sum

?sum: fusion
    | sum "+" fusion                        -> choice
?fusion: parallel
    | fusion "&" parallel                   -> fuse
?parallel: hiding
    | parallel "|" hiding                   -> coop
?hiding: prefixed
    | hiding "\\" labelset                  -> hide
?prefixed: label "." prefixed               -> prefix
    | _ATTRACT "(" label ")" "." prefixed   -> attract
    | _REPEL "(" label ")" "." prefixed     -> repel
    | atom
?atom: "0"                                  -> nil
    | CONSTANT                              -> const
    | _DIFFUSE "(" label ("," label)* ")"   -> diffuse
    | "(" sum ")"

labelset: "{" [label ("," label)*] "}"
label: NAME                                 -> activator
    | "~" NAME                              -> inhibitor

_ATTRACT.2: /A(?=\s*\()/
_REPEL.2: /R(?=\s*\()/
_DIFFUSE.2: /C(?=\s*\()/
CONSTANT: /[A-Z][A-Za-z0-9_]*/
NAME: /[a-z][A-Za-z0-9_]*/

%import common.WS
%ignore WS
'''


def _located(meta, message):
    if getattr(meta, 'empty', True):
        return ParseError(message)
    return ParseError(message, meta.line, meta.column)


class _TermBuilder(lark.Transformer):
    # pylint: disable=missing-docstring,no-self-use

    def choice(self, children):
        return Choice(*children)

    def fuse(self, children):
        return Fuse(*children)

    def coop(self, children):
        return Coop(*children)

    def hide(self, children):
        return Hide(*children)

    def prefix(self, children):
        return Prefix(*children)

    @lark.v_args(meta=True)
    def attract(self, meta, children):
        arg, body = children
        if arg.is_tau:
            raise _located(meta, "Attraction needs a named label, not tau")
        return Attract(arg, body)

    @lark.v_args(meta=True)
    def repel(self, meta, children):
        arg, body = children
        if arg.is_tau:
            raise _located(meta, "Repelling needs a named label, not tau")
        return Repel(arg, body)

    def nil(self, _children):
        return NIL

    def const(self, children):
        return Const(str(children[0]))

    def diffuse(self, children):
        # C(a, b) is the competition C(a) + C(b)
        term = Diffuse(children[0])
        for label in children[1:]:
            term = Choice(term, Diffuse(label))
        return term

    @lark.v_args(meta=True)
    def labelset(self, meta, children):
        labels = [label for label in children if label is not None]
        if any(label.is_tau for label in labels):
            raise _located(meta, "Hidden sets cannot contain tau")
        return LabelSet(labels)

    def activator(self, children):
        name = str(children[0])
        if name == TAU_NAME:
            return TAU
        return Label(name)

    def inhibitor(self, children):
        token = children[0]
        if str(token) == TAU_NAME:
            raise ParseError("The internal action has no complement", token.line, token.column)
        return Label(str(token), True)


class GrammarReader(object):
    """A lark parser paired with the transformer that builds values from
    its parse trees.
    """

    def __init__(self, grammar, builder):
        self._parser = lark.Lark(grammar, parser='lalr', propagate_positions=True)
        self._builder = builder

    def _describe(self, names):
        described = set()
        for name in names:
            try:
                pattern = self._parser.get_terminal(name).pattern
            except KeyError:
                described.add(name)
                continue
            if pattern.type == 'str':
                described.add('"{0}"'.format(pattern.value))
            else:
                described.add(name.lstrip('_').lower())
        return described

    def read(self, text):
        """Parse the text and build its value.

        :raises ParseError: If the text is malformed
        """
        try:
            tree = self._parser.parse(text)
        except UnexpectedInput as e:
            expected = getattr(e, 'expected', None) or getattr(e, 'allowed', None) or ()
            if isinstance(e, UnexpectedEOF):
                lines = text.split('\n')
                line, column = len(lines), len(lines[-1]) + 1
                reason = "Unexpected end of input"
            else:
                line, column = e.line, e.column
                token = getattr(e, 'token', None)
                if token is not None and token.type == '$END':
                    reason = "Unexpected end of input"
                elif token is not None:
                    reason = "Unexpected '{0}'".format(token)
                else:
                    reason = "Unexpected character {0!r}".format(getattr(e, 'char', '?'))
            raise ParseError(reason, line, column, self._describe(expected))

        try:
            return self._builder.transform(tree)
        except VisitError as e:
            if isinstance(e.orig_exc, (PseudopodError, ValueError)):
                if isinstance(e.orig_exc, ParseError):
                    raise e.orig_exc
                raise ParseError(str(e.orig_exc))
            raise


_TERMS = GrammarReader(_GRAMMAR, _TermBuilder())


def parse(text):
    """Read a process term written in the concrete syntax.

    Whitespace between tokens is ignored.

    >>> parse('a.0 + b.0 & c.0') == Choice(
    ...     Prefix(Label('a'), NIL), Fuse(Prefix(Label('b'), NIL), Prefix(Label('c'), NIL)))
    True

    :param str text: Term text
    :return: The term
    :rtype: Term
    :raises ParseError: With line, column and the expected tokens if the
        text is malformed
    """
    return _TERMS.read(text)


@dataclass(frozen=True)
class Program(object):
    """Contents of a term file: constant definitions in file order and
    the root term.
    """

    definitions: tuple
    root: Term

    def definition_map(self):
        return dict(self.definitions)


def parse_program(text):
    """Read a term file.

    Each significant line is either a definition ``NAME := term`` or the
    root term, which must come last. ``#`` starts a comment.

    :param str text: File contents
    :rtype: Program
    :raises ParseError: If a line is malformed, a constant is defined
        twice, or the root term is missing or not last
    """
    definitions = []
    seen = set()
    root = None

    for number, line in significant_lines(text):
        if root is not None:
            raise ParseError("The root term must be the last line", number, 1)

        match = DEFINITION_PATTERN.match(line)
        if match is not None:
            name, body = match.group(1), match.group(2)
            if name in seen:
                raise ParseError("Constant '{0}' is defined twice".format(name), number, 1)
            seen.add(name)
            definitions.append((name, _parse_line(body, number, match.start(2))))
        else:
            root = _parse_line(line, number, 0)

    if root is None:
        raise ParseError("Missing root term")
    return Program(tuple(definitions), root)


def _parse_line(text, number, offset):
    try:
        return parse(text)
    except ParseError as e:
        return _raise_moved(e, number, offset)


def _raise_moved(error, number, offset):
    raise error.moved(number, offset)


def format_program(program):
    """Get the canonical text of a term file."""
    lines = ['{0} := {1}'.format(name, format_term(body)) for name, body in program.definitions]
    lines.append(format_term(program.root))
    return '\n'.join(lines) + '\n'


@functools.lru_cache(maxsize=65536)
def complement_term(term):
    """Flip the polarity of every label in a term.

    Nil maps to Nil, operators are kept, tau stays tau and hidden sets are
    left alone since they restrict the interface rather than describe
    behaviour.

    :param Term term: Constant free term
    :return: The complementary term
    :rtype: Term
    :raises UnresolvedConstant: If the term contains a constant
    """
    # pylint: disable=too-many-return-statements
    if isinstance(term, Nil):
        return term
    if isinstance(term, Const):
        raise UnresolvedConstant(term.name)
    if isinstance(term, Prefix):
        return Prefix(_flip(term.label), complement_term(term.body))
    if isinstance(term, Attract):
        return Attract(term.arg.complement(), complement_term(term.body))
    if isinstance(term, Repel):
        return Repel(term.arg.complement(), complement_term(term.body))
    if isinstance(term, Diffuse):
        return Diffuse(_flip(term.arg))
    if isinstance(term, Hide):
        return Hide(complement_term(term.body), term.hidden)
    if isinstance(term, BINARY):
        return type(term)(complement_term(term.left), complement_term(term.right))
    raise TypeError("Not a process term: {0!r}".format(term))


def _flip(label):
    return label if label.is_tau else label.complement()


def children(term):
    """Get the immediate subterms of a term."""
    if isinstance(term, (Prefix, Attract, Repel, Hide)):
        return (term.body,)
    if isinstance(term, BINARY):
        return (term.left, term.right)
    return ()


def own_labels(term):
    """Get the named labels written in the top node of a term."""
    if isinstance(term, Prefix):
        labels = [term.label]
    elif isinstance(term, (Attract, Repel, Diffuse)):
        labels = [term.arg]
    elif isinstance(term, Hide):
        labels = list(term.hidden)
    else:
        labels = []
    return [label for label in labels if not label.is_tau]


def sort(term, env=None):
    """Get the named labels a term mentions.

    Every constant is unfolded once, so recursive definitions terminate.
    Hidden sets, attraction and repelling arguments, and diffusion
    arguments all count; polarity is kept.

    :param Term term: Term to inspect
    :param env: Environment to resolve constants with, optional if the
        term has none
    :return: Labels of the term
    :rtype: LabelSet
    :raises UnresolvedConstant: If a constant cannot be resolved
    """
    labels = set()
    unfolded = set()
    pending = [term]

    while pending:
        current = pending.pop()
        if isinstance(current, Const):
            if current.name in unfolded:
                continue
            unfolded.add(current.name)
            if env is None:
                raise UnresolvedConstant(current.name)
            pending.append(env.resolve_constant(current.name))
            continue
        labels.update(own_labels(current))
        pending.extend(children(current))

    return LabelSet(labels)


def depth(term):
    """Get the height of a term's syntax tree; ``0`` has depth 1."""
    return 1 + max([depth(child) for child in children(term)] or [0])


def size(term):
    """Get the number of nodes of a term's syntax tree."""
    return 1 + sum(size(child) for child in children(term))


def free_constants(term):
    """Get the names of all constants a term refers to directly."""
    names = set()
    pending = [term]
    while pending:
        current = pending.pop()
        if isinstance(current, Const):
            names.add(current.name)
        pending.extend(children(current))
    return names


def named_labels(term):
    """Get the named labels of a constant free term outside hidden sets.

    A term without any is its own complement.
    """
    labels = set()
    pending = [term]
    while pending:
        current = pending.pop()
        if not isinstance(current, Hide):
            labels.update(own_labels(current))
        pending.extend(children(current))
    return labels
