# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.semantics
~~~~~~~~~~~~~~~~~~~

One step transitions of process terms and bounded labelled transition
systems built from them.
"""

import collections
import enum
import logging

from .core import Bounds, PseudopodError
from .environment import Environment
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
    Nil,
    Prefix,
    Repel,
    Term,
    UnresolvedConstant,
    complement_term,
    format_term)

log = logging.getLogger(__name__)


class Rule(enum.Enum):
    """The rule a transition was derived with."""

    PREFIX = 'Prefix'
    PREFIX_A = 'PrefixA'
    PREFIX_R = 'PrefixR'
    DIFFUSION = 'Diffusion'
    CONSTANT = 'Constant'
    CHOICE_L = 'ChoiceL'
    CHOICE_R = 'ChoiceR'
    COOP_L = 'CoopL'
    COOP_R = 'CoopR'
    COOP_SYNC = 'CoopSync'
    HIDING = 'Hiding'
    FUSE_ANNIHILATE = 'FuseAnnihilate'
    FUSE_JOIN_L = 'FuseJoinL'
    FUSE_JOIN_R = 'FuseJoinR'
    FUSE_SPREAD_L = 'FuseSpreadL'
    FUSE_SPREAD_R = 'FuseSpreadR'

    def __str__(self):
        return self.value


class DepthExceeded(PseudopodError, RuntimeError):
    """Constant or diffusion unfolding went deeper than allowed, which
    signals unguarded recursion such as ``X := X``.
    """

    def __init__(self, name, limit):
        self.name = name
        self.limit = limit
        self.state = None
        super(DepthExceeded, self).__init__(
            "Unfolding '{0}' exceeded {1} nested unfoldings".format(name, limit))


Transition = collections.namedtuple('Transition', ['source', 'action', 'target', 'rule'])

# Edges of an LTS refer to states by index. Hand built systems may leave
# the rule out.
Edge = collections.namedtuple('Edge', ['source', 'action', 'target', 'rule'], defaults=(None,))

# A diffusion binding made while exploring; ``existing`` is set when the
# proposed continuation conflicted with an earlier binding.
DiffusionRecord = collections.namedtuple('DiffusionRecord', ['label', 'term', 'existing'])


def _move_key(move):
    action, target, rule = move
    return str(action), format_term(target), rule.value


class Deriver(object):
    """Derives the transitions of terms in one environment.

    Results are memoized per term, so a deriver must not outlive changes
    to the environment it was created with. Each memoized result keeps the
    unfolding nesting its derivation needed, and reusing it deeper than
    ``max_unfold`` allows raises like deriving it again would.

    A diffusion met again while its own binding is still being derived
    contributes no transitions, so bindings such as ``C(a) ::= 0 + C(a)
    + b.0`` made by exploring fusions behave like their guarded part.
    """

    def __init__(self, env, max_unfold=None):
        self._env = env
        self._max_unfold = max_unfold if max_unfold is not None else env.bounds.max_unfold
        self._memo = {}
        # diffusion labels whose binding is being derived
        self._active = set()
        self._cuts = 0
        # deepest unfolding nesting reached by the derivation in progress
        self._deepest = 0

    @property
    def env(self):
        return self._env

    def moves(self, term):
        """Get ``(action, target, rule)`` triples for every transition of
        a term, sorted by action, target text and rule.

        :raises UnresolvedConstant: For a constant without a definition
        :raises DepthExceeded: For unguarded recursion
        """
        return self._moves(term, 0)

    def transitions(self, term):
        """Get the transitions of a term as :class:`Transition` values."""
        return [Transition(term, action, target, rule) for action, target, rule in self.moves(term)]

    def _moves(self, term, unfolds):
        cached = self._memo.get(term)
        if cached is not None:
            result, needed = cached
            if unfolds + needed > self._max_unfold:
                raise DepthExceeded(format_term(term), self._max_unfold)
            self._deepest = max(self._deepest, unfolds + needed)
            return result

        cuts = self._cuts
        outer = self._deepest
        self._deepest = unfolds
        try:
            result = tuple(sorted(set(self._derive(term, unfolds)), key=_move_key))
            needed = self._deepest - unfolds
        finally:
            self._deepest = max(outer, self._deepest)
        # results cut short by a re-entered diffusion depend on the caller
        if self._cuts == cuts:
            self._memo[term] = (result, needed)
        return result

    def _pairs(self, term, unfolds):
        """Distinct ``(action, target)`` pairs of a subterm, in order."""
        seen = set()
        pairs = []
        for action, target, _ in self._moves(term, unfolds):
            if (action, target) not in seen:
                seen.add((action, target))
                pairs.append((action, target))
        return pairs

    def _unfold(self, name, unfolds):
        if unfolds >= self._max_unfold:
            raise DepthExceeded(name, self._max_unfold)
        self._deepest = max(self._deepest, unfolds + 1)
        return unfolds + 1

    def _derive(self, term, unfolds):
        # pylint: disable=too-many-return-statements,too-many-branches
        if isinstance(term, Nil):
            return

        if isinstance(term, Prefix):
            yield term.label, term.body, Rule.PREFIX
        elif isinstance(term, Attract):
            target = self._env.lookup_attract(term.arg)
            if target is not None:
                yield target, term.body, Rule.PREFIX_A
        elif isinstance(term, Repel):
            target = self._env.lookup_repel(term.arg)
            if target is not None:
                yield target, term.body, Rule.PREFIX_R
        elif isinstance(term, Diffuse):
            bound = self._env.lookup_diffusion(term.arg)
            if bound is not None and term.arg in self._active:
                self._cuts += 1
            elif bound is not None:
                depth = self._unfold('C({0})'.format(term.arg), unfolds)
                self._active.add(term.arg)
                try:
                    pairs = self._pairs(bound, depth)
                finally:
                    self._active.discard(term.arg)
                for action, target in pairs:
                    yield action, target, Rule.DIFFUSION
        elif isinstance(term, Const):
            body = self._env.resolve_constant(term.name)
            depth = self._unfold(term.name, unfolds)
            for action, target in self._pairs(body, depth):
                yield action, target, Rule.CONSTANT
        elif isinstance(term, Choice):
            for action, target in self._pairs(term.left, unfolds):
                yield action, target, Rule.CHOICE_L
            for action, target in self._pairs(term.right, unfolds):
                yield action, target, Rule.CHOICE_R
        elif isinstance(term, Coop):
            for move in self._coop(term, unfolds):
                yield move
        elif isinstance(term, Hide):
            for action, target in self._pairs(term.body, unfolds):
                if action not in term.hidden:
                    yield action, Hide(target, term.hidden), Rule.HIDING
        elif isinstance(term, Fuse):
            for move in self._fuse(term, unfolds):
                yield move
        else:
            raise TypeError("Not a process term: {0!r}".format(term))

    def _coop(self, term, unfolds):
        left = self._pairs(term.left, unfolds)
        right = self._pairs(term.right, unfolds)

        for action, target in left:
            yield action, Coop(target, term.right), Rule.COOP_L
        for action, target in right:
            yield action, Coop(term.left, target), Rule.COOP_R

        for action, left_target in left:
            if action.is_tau:
                continue
            partner = action.complement()
            for other, right_target in right:
                if other == partner:
                    yield TAU, Coop(left_target, right_target), Rule.COOP_SYNC

    def _fuse(self, term, unfolds):
        for prefixed, other in ((term.left, term.right), (term.right, term.left)):
            if isinstance(prefixed, Prefix) and _is_complement(other, prefixed.body):
                yield prefixed.label, NIL, Rule.FUSE_ANNIHILATE

        left = self._pairs(term.left, unfolds)
        right = self._pairs(term.right, unfolds)

        common = set(left) & set(right)
        for action, target in left:
            if (action, target) in common:
                yield action, target, Rule.FUSE_JOIN_L
                yield action, target, Rule.FUSE_JOIN_R

        for action, target in left:
            yield action, _spread(action, target), Rule.FUSE_SPREAD_L
        for action, target in right:
            yield action, _spread(action, target), Rule.FUSE_SPREAD_R


def _is_complement(term, body):
    try:
        return term == complement_term(body)
    except UnresolvedConstant:
        return False


def _spread(action, target):
    """Continuation of a fusion that either stops, diffuses, or goes on."""
    return Choice(Choice(NIL, Diffuse(action)), target)


def derive_transitions(term, env=None):
    """Get every transition a term can make in one step.

    :param Term term: Source term
    :param Environment env: Scene the term runs in, empty if not given
    :return: Transitions sorted by action, target text and rule
    :rtype: list
    :raises UnresolvedConstant: If a constant has no definition
    :raises DepthExceeded: If unfolding constants does not reach a prefix
    """
    env = env if env is not None else Environment()
    return Deriver(env).transitions(term)


def replay(transition, env=None):
    """Check that a transition follows from its source under the rule it
    is tagged with.

    :param Transition transition: Transition to check
    :param Environment env: Scene the source runs in
    :return: True if deriving the source again yields the transition
    :rtype: bool
    """
    try:
        return transition in derive_transitions(transition.source, env)
    except PseudopodError:
        return False


def _edge_key(edge):
    return edge.source, str(edge.action), edge.target, str(edge.rule or '')


def _state_text(state):
    if isinstance(state, Term):
        return format_term(state)
    return str(state)


def _dot_escape(text):
    return text.replace('\\', '\\\\').replace('"', '\\"')


class Lts(object):
    """A labelled transition system with integer state ids; state 0 is
    the root.

    :ivar tuple states: State values, terms when built from a term
    :ivar tuple edges: Sorted :class:`Edge` values
    :ivar bool truncated: Whether exploration stopped at a bound
    :ivar tuple diffusion_report: :class:`DiffusionRecord` values
    :ivar dict coordinates: ``(species, cell)`` per annotated state id
    :ivar Environment environment: Scene after exploration, including
        diffusion bindings made along the way. Each state was expanded
        under the bindings that existed when it was reached, not this
        final scene.
    """

    def __init__(self, states, edges, truncated=False, diffusion_report=(),
                 coordinates=None, environment=None):
        self.states = tuple(states)
        if not self.states:
            raise ValueError("A transition system needs at least a root state")

        edges = [edge if isinstance(edge, Edge) else Edge(*edge) for edge in edges]
        for edge in edges:
            if not (0 <= edge.source < len(self.states) and 0 <= edge.target < len(self.states)):
                raise ValueError("Edge {0!r} refers to an unknown state".format(edge))
        self.edges = tuple(sorted(set(edges), key=_edge_key))

        self.truncated = truncated
        self.diffusion_report = tuple(diffusion_report)
        self.coordinates = {
            state: cell for state, cell in (coordinates or {}).items() if 0 <= state < len(self.states)}
        self.environment = environment

        self._successors = [[] for _ in self.states]
        seen = set()
        for edge in self.edges:
            move = (edge.action, edge.target)
            if (edge.source, move) not in seen:
                seen.add((edge.source, move))
                self._successors[edge.source].append(move)

    @property
    def root(self):
        return 0

    def __len__(self):
        return len(self.states)

    def successors(self, state):
        """Get the distinct ``(action, target)`` moves of a state, sorted by
        action text and target id.
        """
        return list(self._successors[state])

    def triples(self):
        """Get the distinct ``(source, action, target)`` triples."""
        return sorted({(e.source, e.action, e.target) for e in self.edges},
                      key=lambda t: (t[0], str(t[1]), t[2]))

    def actions(self):
        return sorted({edge.action for edge in self.edges}, key=str)

    def index_of(self, state):
        return self.states.index(state)

    def to_text(self):
        """Get the line oriented ``.lts`` export of this system."""
        lines = ['states {0} transitions {1} root 0'.format(len(self.states), len(self.edges))]
        for i, state in enumerate(self.states):
            lines.append('state {0} {1}'.format(i, _state_text(state)))
        for edge in self.edges:
            rule = str(edge.rule) if edge.rule is not None else '-'
            lines.append('trans {0} {1} {2} {3}'.format(edge.source, edge.action, edge.target, rule))
        return '\n'.join(lines) + '\n'

    def to_dot(self):
        """Get a Graphviz digraph of this system."""
        lines = ['digraph lts {']
        for i, state in enumerate(self.states):
            attrs = ['label="{0}"'.format(_dot_escape(_state_text(state)))]
            if i == self.root:
                attrs.append('peripheries=2')
            if i in self.coordinates:
                attrs.append('xlabel="p[{0},{1}]"'.format(*self.coordinates[i]))
            lines.append('  {0} [{1}];'.format(i, ', '.join(attrs)))
        for edge in self.edges:
            label = str(edge.action)
            if edge.rule is not None:
                label = '{0} ({1})'.format(label, edge.rule)
            lines.append('  {0} -> {1} [label="{2}"];'.format(
                edge.source, edge.target, _dot_escape(label)))
        lines.append('}')
        return '\n'.join(lines) + '\n'

    def __repr__(self):
        return 'Lts(states={0}, edges={1}, truncated={2})'.format(
            len(self.states), len(self.edges), self.truncated)


def disjoint_union(first, second):
    """Place two transition systems side by side.

    :return: The combined system, rooted at the root of ``first``, and the
        id the root of ``second`` got in it
    :rtype: tuple
    """
    offset = len(first.states)
    edges = list(first.edges)
    edges.extend(Edge(e.source + offset, e.action, e.target + offset, e.rule) for e in second.edges)
    combined = Lts(
        first.states + second.states,
        edges,
        truncated=first.truncated or second.truncated)
    return combined, offset


class _Explorer(object):
    """Breadth first exploration state of :func:`build_lts`."""

    def __init__(self, root, env, bounds, diffusion):
        self.env = env
        self.bounds = bounds
        self.diffusion = diffusion
        self.deriver = Deriver(env, bounds.max_unfold)
        self.states = [root]
        self.index = {root: 0}
        self.edges = []
        self.report = []
        self._reported = set()
        self.truncated = False

    def expand(self, state_id):
        term = self.states[state_id]
        try:
            transitions = self.deriver.transitions(term)
        except PseudopodError as e:
            e.state = term
            raise
        if self.diffusion:
            for transition in transitions:
                self._register(transition)
        return transitions

    def _register(self, transition):
        label, term = transition.action, transition.target
        existing = self.env.lookup_diffusion(label)
        if existing is None:
            self.env = self.env.bind_diffusion(label, term)
            self.deriver = Deriver(self.env, self.bounds.max_unfold)
            self.report.append(DiffusionRecord(label, term, None))
        elif existing != term and (label, term) not in self._reported:
            self._reported.add((label, term))
            log.warning("Diffusion conflict for C(%s): keeping %s, ignoring %s",
                        label, format_term(existing), format_term(term))
            self.report.append(DiffusionRecord(label, term, existing))

    def level(self, frontier):
        """Expand one breadth first level and get the ids it discovered."""
        found = []
        fresh = {}
        for state_id in frontier:
            for transition in self.expand(state_id):
                found.append((state_id, transition))
                if transition.target not in self.index:
                    fresh[transition.target] = None

        ordered = sorted(fresh, key=format_term)
        room = self.bounds.max_states - len(self.states)
        if len(ordered) > room:
            log.warning("State bound of %s reached, dropping %s states",
                        self.bounds.max_states, len(ordered) - room)
            self.truncated = True
            ordered = ordered[:room]

        added = []
        for term in ordered:
            self.index[term] = len(self.states)
            added.append(len(self.states))
            self.states.append(term)

        for state_id, transition in found:
            target = self.index.get(transition.target)
            if target is not None:
                self.edges.append(Edge(state_id, transition.action, target, transition.rule))
        return added

    def has_moves(self, frontier):
        for state_id in frontier:
            term = self.states[state_id]
            try:
                if self.deriver.moves(term):
                    return True
            except PseudopodError as e:
                e.state = term
                raise
        return False


def build_lts(root, env=None, bounds=None, diffusion=False):
    """Explore the transition system of a term breadth first.

    States are structurally distinct terms. The root gets id 0, states
    found on each later level are numbered in order of their canonical
    text. States on the deepest allowed level are kept but not expanded.

    :param Term root: Initial state
    :param Environment env: Scene to explore in, empty if not given
    :param Bounds bounds: Exploration bounds, those of the scene if not given
    :param bool diffusion: Whether to bind ``C(a)`` to the target of every
        ``a`` transition met along the way. A state is expanded once, with
        the bindings made before it, so states expanded earlier may lack
        moves that the final :attr:`Lts.environment` would give them.
    :return: The explored system
    :rtype: Lts
    :raises PseudopodError: Derivation errors, with the offending term set
        as their ``state`` attribute
    """
    env = env if env is not None else Environment()
    bounds = bounds if bounds is not None else env.bounds
    if not isinstance(bounds, Bounds):
        raise ValueError("Expected exploration bounds, got {0!r}".format(bounds))

    explorer = _Explorer(root, env, bounds, diffusion)
    frontier = [0]
    depth = 0

    while frontier:
        if depth >= bounds.max_depth:
            if explorer.has_moves(frontier):
                log.warning("Depth bound of %s reached with %s states unexpanded",
                            bounds.max_depth, len(frontier))
                explorer.truncated = True
            break
        frontier = explorer.level(frontier)
        depth += 1
        log.debug("Level %s: %s new states, %s total", depth, len(frontier), len(explorer.states))

    return Lts(
        explorer.states,
        explorer.edges,
        truncated=explorer.truncated,
        diffusion_report=explorer.report,
        coordinates=env.coordinates,
        environment=explorer.env)
