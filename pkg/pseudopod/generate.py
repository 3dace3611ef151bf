# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.generate
~~~~~~~~~~~~~~~~~~

Seeded random terms, transition systems, streams and formulas. Every
function takes a :class:`random.Random` so results only depend on its
seed.
"""

import string

from .semantics import Edge, Lts
from .streams import LABEL, STATE, TRUTH, And, Bottom, Implies, Not, Or, RationalStream, Top, Var
from .syntax import (
    NIL,
    TAU,
    Attract,
    Choice,
    Const,
    Coop,
    Diffuse,
    Fuse,
    Hide,
    Label,
    LabelSet,
    Prefix,
    Repel)


def alphabet_names(alphabet):
    """Get the first ``alphabet`` label names: ``a``, ``b``, ..."""
    if not 1 <= alphabet <= len(string.ascii_lowercase):
        raise ValueError("Alphabet size must be between 1 and 26, got {0}".format(alphabet))
    return list(string.ascii_lowercase[:alphabet])


def random_label(rng, alphabet, inhibitors=False, tau=False):
    if tau and rng.random() < 0.1:
        return TAU
    name = rng.choice(alphabet_names(alphabet))
    return Label(name, inhibitors and rng.random() < 0.5)


def random_hidden(rng, alphabet, inhibitors=False):
    """Get a random, possibly empty, set of labels to hide."""
    labels = [Label(name) for name in alphabet_names(alphabet)]
    if inhibitors:
        labels.extend(label.complement() for label in list(labels))
    return LabelSet(label for label in labels if rng.random() < 0.3)


def random_term(rng, depth, alphabet, inhibitors=False, tau=False, constants=()):
    """Get a random term of at most the given depth.

    By default terms only use activator labels and no constants, which
    is what instantiating laws needs.

    :param random.Random rng: Source of randomness
    :param int depth: Largest syntax tree depth, at least 1
    :param int alphabet: Number of label names to draw from
    :param bool inhibitors: Whether inhibitor labels may appear
    :param bool tau: Whether the internal action may appear
    :param constants: Constant names that may appear as leaves
    :rtype: Term
    """
    if depth < 1:
        raise ValueError("Terms have depth at least 1, got {0}".format(depth))

    def label():
        return random_label(rng, alphabet, inhibitors, tau)

    def named():
        return random_label(rng, alphabet, inhibitors, False)

    if depth == 1 or rng.random() < 0.2:
        roll = rng.random()
        if constants and roll < 0.2:
            return Const(rng.choice(list(constants)))
        if roll < 0.6:
            return NIL
        return Diffuse(named())

    sub = depth - 1
    kind = rng.randrange(9)
    if kind < 3:
        return Prefix(label(), random_term(rng, sub, alphabet, inhibitors, tau, constants))
    if kind == 3:
        return Attract(named(), random_term(rng, sub, alphabet, inhibitors, tau, constants))
    if kind == 4:
        return Repel(named(), random_term(rng, sub, alphabet, inhibitors, tau, constants))
    if kind == 5:
        return Hide(random_term(rng, sub, alphabet, inhibitors, tau, constants),
                    random_hidden(rng, alphabet, inhibitors))

    operator = (Choice, Fuse, Coop)[kind - 6]
    return operator(random_term(rng, sub, alphabet, inhibitors, tau, constants),
                    random_term(rng, sub, alphabet, inhibitors, tau, constants))


def random_lts(rng, states, alphabet, edges):
    """Get a random transition system over integer states.

    :param int states: Number of states
    :param int alphabet: Number of action names
    :param int edges: Number of edges to draw, duplicates collapse
    :rtype: Lts
    """
    labels = [Label(name) for name in alphabet_names(alphabet)]
    drawn = [Edge(rng.randrange(states), rng.choice(labels), rng.randrange(states)) for _ in range(edges)]
    return Lts(range(states), drawn)


def random_stream(rng, kind=LABEL, alphabet=2, max_prefix=4, max_cycle=4, finite=0.2):
    """Get a random stream.

    :param str kind: Element kind; truth streams draw booleans, state
        streams integers below ``alphabet``, label streams labels
    :param float finite: Probability of a stream without a cycle
    :rtype: RationalStream
    """
    if kind == TRUTH:
        pool = [True, False]
    elif kind == STATE:
        pool = list(range(alphabet))
    else:
        pool = [Label(name) for name in alphabet_names(alphabet)]

    prefix = [rng.choice(pool) for _ in range(rng.randint(0, max_prefix))]
    if rng.random() < finite:
        return RationalStream(prefix, None, kind)
    cycle = [rng.choice(pool) for _ in range(rng.randint(1, max_cycle))]
    return RationalStream(prefix, cycle, kind)


def random_formula(rng, depth, variables):
    """Get a random formula of at most the given depth over the named
    variables.
    """
    if depth <= 1 or rng.random() < 0.2:
        roll = rng.random()
        if roll < 0.1:
            return Top()
        if roll < 0.2:
            return Bottom()
        return Var(rng.choice(list(variables)))

    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_formula(rng, depth - 1, variables))
    operator = (And, Or, Implies)[kind - 1]
    return operator(random_formula(rng, depth - 1, variables), random_formula(rng, depth - 1, variables))
