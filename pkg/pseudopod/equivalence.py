# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.equivalence
~~~~~~~~~~~~~~~~~~~~~

Strong bisimilarity of transition system states, the equational theory
of the calculus as a normalizer, set operations derived from hiding, and
an empirical report on which equations survive bisimilarity.
"""

import collections
import functools
import logging
import random

from .core import PseudopodError
from .environment import Environment
from .generate import random_hidden, random_term
from .semantics import build_lts, disjoint_union
from .syntax import (
    NIL,
    Attract,
    Choice,
    Const,
    Coop,
    Diffuse,
    Fuse,
    Hide,
    LabelSet,
    Nil,
    Prefix,
    Repel,
    complement_term,
    format_term,
    named_labels,
    sort)

log = logging.getLogger(__name__)

NAIVE_LIMIT = 200


class SizeLimit(PseudopodError, ValueError):
    """A transition system is too large for the quadratic oracle."""


class SortOutOfUniverse(PseudopodError, ValueError):
    """A sort holds labels that are not part of the universe."""


class Partition(object):
    """Disjoint blocks of state ids covering every state of a system.

    Blocks are ordered by their smallest state id.

    :ivar bool approximate: Set when the system it was computed on was
        truncated, so the blocks may be finer or coarser than the truth
    """

    def __init__(self, blocks, approximate=False):
        self.blocks = tuple(sorted((frozenset(b) for b in blocks if b), key=min))
        self.approximate = approximate
        self._index = {}
        for number, block in enumerate(self.blocks):
            for state in block:
                if state in self._index:
                    raise ValueError("State {0} is in more than one block".format(state))
                self._index[state] = number

    def block_of(self, state):
        """Get the number of the block a state is in."""
        return self._index[state]

    def same(self, first, second):
        return self._index[first] == self._index[second]

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return 'Partition({0!r})'.format([sorted(block) for block in self.blocks])


def _refine(lts, partition):
    groups = collections.OrderedDict()
    for state in range(len(lts)):
        signature = frozenset(
            (action, partition.block_of(target)) for action, target in lts.successors(state))
        groups.setdefault((partition.block_of(state), signature), set()).add(state)
    return Partition(groups.values(), lts.truncated)


def refinement_history(lts):
    """Get the partitions partition refinement goes through.

    The first holds every state in one block, each next one splits the
    blocks of the previous one by the ``(action, target block)`` moves of
    their states, and the last one is bisimilarity.

    :rtype: list
    """
    history = [Partition([range(len(lts))], lts.truncated)]
    while True:
        refined = _refine(lts, history[-1])
        if len(refined) == len(history[-1]):
            return history
        history.append(refined)


def bisimilarity(lts):
    """Get the coarsest partition of the states of a system into blocks of
    strongly bisimilar states.

    :param Lts lts: System to partition
    :rtype: Partition
    """
    history = refinement_history(lts)
    log.debug("Bisimilarity settled after %s refinement rounds with %s blocks",
              len(history) - 1, len(history[-1]))
    return history[-1]


def naive_bisim(lts):
    """Get bisimilarity by starting from all pairs of states and deleting
    pairs that violate the transfer condition until none do.

    :raises SizeLimit: For systems of more than 200 states
    :rtype: Partition
    """
    size = len(lts)
    if size > NAIVE_LIMIT:
        raise SizeLimit("The naive check handles at most {0} states, got {1}".format(NAIVE_LIMIT, size))

    relation = {(p, q) for p in range(size) for q in range(size)}

    def matched(p, q):
        return all(any(b == a and (p2, q2) in relation for b, q2 in lts.successors(q))
                   for a, p2 in lts.successors(p))

    changed = True
    while changed:
        violating = {(p, q) for p, q in relation if not (matched(p, q) and matched(q, p))}
        relation -= violating
        changed = bool(violating)

    blocks = []
    placed = set()
    for p in range(size):
        if p not in placed:
            block = {q for q in range(size) if (p, q) in relation}
            placed.update(block)
            blocks.append(block)
    return Partition(blocks, lts.truncated)


def _unmatched_move(lts, previous, p, q):
    """Find a move of ``p`` that ``q`` cannot follow into the same block
    of ``previous``.
    """
    for action, target in lts.successors(p):
        if not any(other == action and previous.same(target, partner)
                   for other, partner in lts.successors(q)):
            return action, target
    return None


def distinguishing_actions(lts, first, second, history=None):
    """Get a sequence of actions that tells two states apart.

    Starting from the round of partition refinement that separated the
    two states, an unmatched move of one of them is followed, paired with
    the lowest numbered move of the other on the same action, into a pair
    that was separated one round earlier.

    :return: The actions, or ``None`` when the states are bisimilar
    :rtype: list
    """
    history = history if history is not None else refinement_history(lts)
    if history[-1].same(first, second):
        return None

    actions = []
    p, q = first, second
    while True:
        rounds = next(k for k, partition in enumerate(history) if not partition.same(p, q))
        previous = history[rounds - 1]

        move = _unmatched_move(lts, previous, p, q)
        if move is None:
            move = _unmatched_move(lts, previous, q, p)
            p, q = q, p

        action, target = move
        actions.append(action)
        partners = [partner for other, partner in lts.successors(q) if other == action]
        if not partners:
            return actions
        p, q = target, min(partners)


Verdict = collections.namedtuple('Verdict', ['bisimilar', 'actions', 'approximate'])


def bisimilar(first, second, env=None, bounds=None):
    """Decide whether the roots of two terms are strongly bisimilar.

    :param Term first: First term
    :param Term second: Second term
    :param Environment env: Scene for both terms
    :param Bounds bounds: Exploration bounds for each of them
    :return: The verdict, distinguishing actions when it is negative, and
        whether either system was truncated
    :rtype: Verdict
    """
    env = env if env is not None else Environment()
    combined, offset = disjoint_union(build_lts(first, env, bounds), build_lts(second, env, bounds))
    history = refinement_history(combined)
    if history[-1].same(0, offset):
        return Verdict(True, None, combined.truncated)
    return Verdict(False, distinguishing_actions(combined, 0, offset, history), combined.truncated)


# Normal forms are sums of fusions: a frozenset of products, each product
# a frozenset of atoms. Atoms are normalized terms that are neither sums
# nor fusions. Nil is the empty sum.

_EMPTY = frozenset()


def _is_annihilated(product):
    for atom in product:
        try:
            if complement_term(atom) in product:
                return True
        except PseudopodError:
            continue
    return False


def _canonical_sum(products):
    """Drop annihilated products, and products that contain another."""
    kept = [p for p in set(products) if not _is_annihilated(p)]
    return frozenset(p for p in kept if not any(q < p for q in kept))


def _complement_form(form):
    return frozenset(frozenset(complement_term(atom) for atom in product) for product in form)


def _fuse_forms(left, right):
    try:
        if right == _complement_form(left):
            return _EMPTY
    except PseudopodError:
        pass
    return _canonical_sum(p | q for p in left for q in right)


def _hide_atom(atom, hidden):
    if not len(hidden):
        return atom
    if isinstance(atom, Hide):
        return Hide(atom.body, atom.hidden | hidden)
    return Hide(atom, hidden)


def _atom_form(atom):
    if not isinstance(atom, Const) and not named_labels(atom):
        return _EMPTY
    return frozenset([frozenset([atom])])


def _form_key(form_term):
    return format_term(form_term)


def _product_term(product):
    atoms = sorted(product, key=format_term)
    term = atoms[0]
    for atom in atoms[1:]:
        term = Fuse(term, atom)
    return term


def _form_term(form):
    if not form:
        return NIL
    products = sorted((_product_term(p) for p in form), key=_form_key)
    term = products[0]
    for product in products[1:]:
        term = Choice(term, product)
    return term


@functools.lru_cache(maxsize=65536)
def _normal_form(term):
    # pylint: disable=too-many-return-statements
    if isinstance(term, Nil):
        return _EMPTY
    if isinstance(term, Choice):
        return _canonical_sum(_normal_form(term.left) | _normal_form(term.right))
    if isinstance(term, Fuse):
        return _fuse_forms(_normal_form(term.left), _normal_form(term.right))
    if isinstance(term, Hide):
        body = _normal_form(term.body)
        return _canonical_sum(
            frozenset(_hide_atom(atom, term.hidden) for atom in product) for product in body)
    if isinstance(term, Prefix):
        return _atom_form(Prefix(term.label, normalize(term.body)))
    if isinstance(term, Attract):
        return _atom_form(Attract(term.arg, normalize(term.body)))
    if isinstance(term, Repel):
        return _atom_form(Repel(term.arg, normalize(term.body)))
    if isinstance(term, Coop):
        return _atom_form(Coop(normalize(term.left), normalize(term.right)))
    if isinstance(term, (Diffuse, Const)):
        return _atom_form(term)
    raise TypeError("Not a process term: {0!r}".format(term))


def normalize(term):
    """Get the canonical representative of a term under the equations of
    the calculus.

    Fusion is distributed over choice, giving a choice of fusions in
    which operands of both operators are sorted and free of duplicates.
    Nil disappears from choices and absorbs fusions, a choice operand
    disappears when another operand is contained in it, and a fusion of
    syntactically complementary operands becomes Nil. Hiding is pushed
    down to the operands of choice and fusion, and terms without any
    named label are Nil.

    The complement check looks at whole fusion operands before
    distributing, so the equations are only guaranteed to relate equal
    normal forms for terms whose labels are all activators. With
    inhibitors, ``(a.0 + b.0) & (~a.0 + ~b.0)`` is Nil while its
    distributed form is ``a.0 & ~b.0 + b.0 & ~a.0``.

    :param Term term: Term to normalize
    :return: Its normal form, which normalizes to itself
    :rtype: Term
    """
    return _form_term(_normal_form(term))


def axiom_equal(first, second):
    """Check whether two terms have the same normal form."""
    return normalize(first) == normalize(second)


class Connectives(object):
    """Complement, meet, join and implication of sorts, written in terms
    of hiding with the universe standing for the top element.

    Arguments are label sets, or terms which stand for their sort.
    """

    def __init__(self, universe):
        if not len(universe):
            raise ValueError("Connectives need a nonempty universe")
        self.universe = universe

    def _sort(self, value):
        labels = value if isinstance(value, LabelSet) else sort(value)
        if not labels.issubset(self.universe):
            raise SortOutOfUniverse("Sort {0} is not part of universe {1}".format(
                labels, self.universe))
        return labels

    def neg(self, p):
        return self.universe - self._sort(p)

    def conj(self, p, q):
        return self._sort(p) - (self.universe - self._sort(q))

    def disj(self, p, q):
        return self.universe - ((self.universe - self._sort(p)) - self._sort(q))

    def impl(self, p, q):
        return self.universe - (self._sort(p) - self._sort(q))


def derived_connectives(universe):
    """Get the hiding based connectives over a universe.

    :param LabelSet universe: Labels standing for the top element
    :rtype: Connectives
    :raises ValueError: If the universe is empty
    """
    return Connectives(universe)


# Each law maps sampled operands to its left and right hand side.
LAWS = collections.OrderedDict([
    (1, lambda p, q, r, h: (Hide(NIL, h), NIL)),
    (2, lambda p, q, r, h: (Fuse(p, complement_term(p)), NIL)),
    (3, lambda p, q, r, h: (Fuse(p, p), p)),
    (4, lambda p, q, r, h: (Fuse(p, NIL), NIL)),
    (5, lambda p, q, r, h: (Hide(Choice(p, q), h), Choice(Hide(p, h), Hide(q, h)))),
    (6, lambda p, q, r, h: (Hide(Fuse(p, q), h), Fuse(Hide(p, h), Hide(q, h)))),
    (7, lambda p, q, r, h: (Fuse(p, q), Fuse(q, p))),
    (8, lambda p, q, r, h: (Fuse(p, Fuse(q, r)), Fuse(Fuse(p, q), r))),
    (9, lambda p, q, r, h: (Choice(p, p), p)),
    (10, lambda p, q, r, h: (Choice(p, NIL), p)),
    (11, lambda p, q, r, h: (Choice(p, q), Choice(q, p))),
    (12, lambda p, q, r, h: (Choice(p, Choice(q, r)), Choice(Choice(p, q), r))),
    (13, lambda p, q, r, h: (Fuse(p, Choice(q, r)), Choice(Fuse(p, q), Fuse(p, r)))),
    (14, lambda p, q, r, h: (Choice(p, Fuse(q, r)), Fuse(Choice(p, q), Choice(p, r)))),
])


def law_instances(seed, samples, depth=3, alphabet=3):
    """Get sampled instantiations of every law.

    Operands are random terms over activator labels only.

    :return: ``(law, lhs, rhs)`` triples, ``samples`` per law, in law order
    :rtype: list
    """
    rng = random.Random(seed)
    instances = []
    for number, law in LAWS.items():
        for _ in range(samples):
            p, q, r = (random_term(rng, depth, alphabet) for _ in range(3))
            h = random_hidden(rng, alphabet)
            lhs, rhs = law(p, q, r, h)
            instances.append((number, lhs, rhs))
    return instances


LawResult = collections.namedtuple('LawResult', ['law', 'holds', 'total', 'counterexamples'])


class ConformanceReport(object):
    """Which laws held under bisimilarity for which instantiations."""

    def __init__(self, results):
        self.results = tuple(results)

    def failing(self):
        return [result for result in self.results if result.holds < result.total]

    def to_text(self):
        lines = []
        for result in self.results:
            verdict = 'holds' if result.holds == result.total else 'fails'
            lines.append('law {0} {1} {2}/{3}'.format(result.law, verdict, result.holds, result.total))
            for lhs, rhs in result.counterexamples:
                lines.append('cex {0} ;; {1}'.format(format_term(lhs), format_term(rhs)))
        return '\n'.join(lines) + '\n'


def law_conformance(seed=0, samples=50, depth=3, alphabet=3, env=None):
    """Check sampled instantiations of every law under bisimilarity.

    :param int seed: Seed of the instantiation sampler
    :param int samples: Instantiations per law
    :param int depth: Largest depth of sampled operands
    :param int alphabet: Number of label names operands draw from
    :param Environment env: Scene to explore both sides in
    :rtype: ConformanceReport
    """
    if samples < 0:
        raise ValueError("The number of samples cannot be negative, got {0}".format(samples))
    env = env if env is not None else Environment()

    tallies = collections.OrderedDict((law, [0, 0, []]) for law in LAWS)
    for law, lhs, rhs in law_instances(seed, samples, depth, alphabet):
        verdict = bisimilar(lhs, rhs, env)
        tally = tallies[law]
        tally[1] += 1
        if verdict.bisimilar:
            tally[0] += 1
        else:
            log.debug("Law %s fails for %s ;; %s", law, format_term(lhs), format_term(rhs))
            tally[2].append((lhs, rhs))

    results = []
    for law, (holds, total, counterexamples) in tallies.items():
        log.info("Law %s held for %s of %s instantiations", law, holds, total)
        results.append(LawResult(law, holds, total, tuple(counterexamples)))
    return ConformanceReport(results)

