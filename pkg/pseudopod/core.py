# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.core
~~~~~~~~~~~~~~

Plumbing shared by the rest of Pseudopod: the root error type, reading of
line oriented input files, and exploration bounds.
"""

COMMENT_CHAR = '#'

DEFAULT_MAX_STATES = 10000
DEFAULT_MAX_DEPTH = 1000
DEFAULT_MAX_UNFOLD = 64


class PseudopodError(Exception):
    """Base for all errors raised by Pseudopod because of bad input."""


def _strip_comment(line):
    idx = line.find(COMMENT_CHAR)
    if idx == -1:
        return line.strip()
    return line[:idx].strip()


def split_by_line(content):
    """Split the given content into a list of items by newline.

    Both \\r\\n and \\n are supported. Leading and trailing whitespace is
    removed from all elements returned, blank lines are kept so that the
    position of each element matches its line number.

    If the given content is an empty string or a string of only
    whitespace, an empty list will be returned.

    :param str content: Content to split by newlines
    :return: List of items that were separated by newlines.
    :rtype: list
    """
    if not content.strip():
        return []
    return [part.strip() for part in content.replace('\r\n', '\n').split('\n')]


def significant_lines(content):
    """Get all lines of a term, scene or formula file that carry content.

    Everything after a ``#`` on a line is a comment. Lines that are empty
    once comments are removed are skipped.

    >>> significant_lines('universe a b  # names\\n\\nA: a -> b')
    [(1, 'universe a b'), (3, 'A: a -> b')]

    :param str content: Full text of the file
    :return: Pairs of one-based line number and the stripped line
    :rtype: list
    """
    lines = []
    for number, line in enumerate(split_by_line(content), start=1):
        stripped = _strip_comment(line)
        if stripped:
            lines.append((number, stripped))
    return lines


class Bounds(object):
    """Limits on how far the transition system of a term is explored.

    :ivar int max_states: Most states an LTS may contain
    :ivar int max_depth: Deepest breadth-first level that is expanded
    :ivar int max_unfold: Most nested constant unfoldings allowed while
        deriving the transitions of a single term
    """

    __slots__ = ('_max_states', '_max_depth', '_max_unfold')

    def __init__(self, max_states=None, max_depth=None, max_unfold=None):
        """Set the bounds, falling back to the defaults for any that are
        not given.

        :raises ValueError: If any bound is not a positive integer
        """
        self._max_states = _positive('max_states', max_states, DEFAULT_MAX_STATES)
        self._max_depth = _positive('max_depth', max_depth, DEFAULT_MAX_DEPTH)
        self._max_unfold = _positive('max_unfold', max_unfold, DEFAULT_MAX_UNFOLD)

    @property
    def max_states(self):
        return self._max_states

    @property
    def max_depth(self):
        return self._max_depth

    @property
    def max_unfold(self):
        return self._max_unfold

    def replace(self, **changes):
        """Get a copy of these bounds with some of them changed.

        Bounds passed as ``None`` keep their current value.

        :return: New bounds
        :rtype: Bounds
        """
        values = {
            'max_states': self._max_states,
            'max_depth': self._max_depth,
            'max_unfold': self._max_unfold,
        }
        for key, value in changes.items():
            if key not in values:
                raise ValueError("Unknown bound '{0}'".format(key))
            if value is not None:
                values[key] = value
        return Bounds(**values)

    def _key(self):
        return self._max_states, self._max_depth, self._max_unfold

    def __eq__(self, other):
        return isinstance(other, Bounds) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return 'Bounds(max_states={0}, max_depth={1}, max_unfold={2})'.format(*self._key())


def _positive(name, value, default):
    if value is None:
        return default
    # bool is an int, but never a sensible bound
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError("Bound {0} must be a positive integer, got {1!r}".format(name, value))
    return value
