# -*- coding: utf-8 -*-
import pytest

import pseudopod.semantics
from pseudopod.core import Bounds
from pseudopod.environment import Environment, load_scene
from pseudopod.semantics import DepthExceeded, Edge, Lts, Rule, Transition, build_lts
from pseudopod.syntax import NIL, Const, Label, UnresolvedConstant, parse

SCENE = load_scene("""
universe a b c
A: a -> b
R: a -> ~c
C: a := b.0
X := a.X
""")


def moves(text, env=SCENE):
    return set(
        (str(t.action), str(t.target), str(t.rule))
        for t in pseudopod.semantics.derive_transitions(parse(text), env))


# One term per rule, with the complete set of transitions it has.
BATTERY = [
    ('a.0', {('a', '0', 'Prefix')}),
    ('A(a).c.0', {('b', 'c.0', 'PrefixA')}),
    ('R(a).0', {('~c', '0', 'PrefixR')}),
    ('C(a)', {('b', '0', 'Diffusion')}),
    ('X', {('a', 'X', 'Constant')}),
    ('a.0 + b.0', {('a', '0', 'ChoiceL'), ('b', '0', 'ChoiceR')}),
    ('a.0 | ~a.0', {
        ('a', '0 | ~a.0', 'CoopL'),
        ('~a', 'a.0 | 0', 'CoopR'),
        ('tau', '0 | 0', 'CoopSync')}),
    ('(a.0 + b.0) \\ {b}', {('a', '0 \\ {b}', 'Hiding')}),
    ('a.b.0 & ~b.0', {
        ('a', '0', 'FuseAnnihilate'),
        ('a', '0 + C(a) + b.0', 'FuseSpreadL'),
        ('~b', '0 + C(~b) + 0', 'FuseSpreadR')}),
    ('~b.0 & a.b.0', {
        ('a', '0', 'FuseAnnihilate'),
        ('~b', '0 + C(~b) + 0', 'FuseSpreadL'),
        ('a', '0 + C(a) + b.0', 'FuseSpreadR')}),
    ('a.0 & a.0', {
        ('a', '0', 'FuseJoinL'),
        ('a', '0', 'FuseJoinR'),
        ('a', '0 + C(a) + 0', 'FuseSpreadL'),
        ('a', '0 + C(a) + 0', 'FuseSpreadR')}),
    ('a.c.0 & b.c.0', {
        ('a', '0 + C(a) + c.0', 'FuseSpreadL'),
        ('b', '0 + C(b) + c.0', 'FuseSpreadR')}),
]


@pytest.mark.parametrize('text,expected', BATTERY)
def test_rule_battery(text, expected):
    assert expected == moves(text)


def test_battery_covers_every_rule():
    seen = set()
    for _, expected in BATTERY:
        seen.update(rule for _, _, rule in expected)
    assert set(str(rule) for rule in Rule) == seen


@pytest.mark.parametrize('text', [t for t, _ in BATTERY])
def test_every_transition_replays(text):
    for transition in pseudopod.semantics.derive_transitions(parse(text), SCENE):
        assert pseudopod.semantics.replay(transition, SCENE)


def test_replay_rejects_wrong_rule():
    forged = Transition(parse('a.0 + b.0'), Label('a'), NIL, Rule.CHOICE_R)
    assert not pseudopod.semantics.replay(forged, SCENE)


def test_nil_is_deadlocked():
    assert set() == moves('0')


def test_undefined_environment_lookups_are_stuck():
    assert set() == moves('A(c).0')
    assert set() == moves('R(b).0')
    assert set() == moves('C(c)')


def test_sync_needs_complementary_names():
    assert 'CoopSync' not in set(rule for _, _, rule in moves('a.0 | ~b.0'))
    assert 'CoopSync' not in set(rule for _, _, rule in moves('tau.0 | tau.0'))


def test_hiding_never_hides_tau():
    assert {('tau', '0 \\ {a}', 'Hiding')} == moves('(tau.0 + a.0) \\ {a}')


def test_unguarded_recursion():
    env = Environment(constants={'X': Const('X')})
    with pytest.raises(DepthExceeded) as e:
        pseudopod.semantics.derive_transitions(Const('X'), env)
    assert 64 == e.value.limit


def test_mutual_unguarded_recursion_respects_unfold_bound():
    env = Environment(constants={'X': Const('Y'), 'Y': Const('X')}, bounds=Bounds(max_unfold=5))
    with pytest.raises(DepthExceeded) as e:
        pseudopod.semantics.derive_transitions(Const('X'), env)
    assert 5 == e.value.limit


def _chain(length):
    constants = dict(('X{0}'.format(i), Const('X{0}'.format(i + 1))) for i in range(1, length))
    constants['X{0}'.format(length)] = parse('a.0')
    return Environment(constants=constants)


@pytest.mark.parametrize('text', ['X1 + X35', 'X35 + X1', 'X35 | X1', 'X1 & X35'])
def test_unfold_bound_does_not_depend_on_operand_order(text):
    with pytest.raises(DepthExceeded):
        pseudopod.semantics.derive_transitions(parse(text), _chain(70))


def test_unfold_bound_reached_through_a_memoized_constant():
    deriver = pseudopod.semantics.Deriver(_chain(70))

    assert [(Label('a'), NIL, Rule.CONSTANT)] == list(deriver.moves(Const('X35')))
    with pytest.raises(DepthExceeded):
        deriver.moves(Const('X1'))


def test_unfold_bound_allows_a_chain_that_fits():
    deriver = pseudopod.semantics.Deriver(_chain(64))

    deriver.moves(Const('X30'))
    assert [(Label('a'), NIL, Rule.CONSTANT)] == list(deriver.moves(Const('X1')))


def test_unfold_bound_is_checked_across_states():
    env = _chain(70).define('Y', parse('b.X1 + X35'))
    with pytest.raises(DepthExceeded) as e:
        build_lts(Const('Y'), env)
    assert Const('X1') == e.value.state


def test_unresolved_constant():
    with pytest.raises(UnresolvedConstant):
        pseudopod.semantics.derive_transitions(parse('a.0 + Y'), Environment())


class TestBuildLts(object):
    def test_single_prefix(self):
        lts = build_lts(parse('a.0'))

        assert 2 == len(lts.states)
        assert 1 == len(lts.edges)
        assert not lts.truncated

    def test_recursion_is_a_self_loop(self):
        lts = build_lts(Const('X'), SCENE)

        assert (Const('X'),) == lts.states
        assert (Edge(0, Label('a'), 0, Rule.CONSTANT),) == lts.edges

    def test_interleaving_diamond(self):
        lts = build_lts(parse('a.0 | b.0'))

        expected = '\n'.join([
            'states 4 transitions 4 root 0',
            'state 0 a.0 | b.0',
            'state 1 0 | b.0',
            'state 2 a.0 | 0',
            'state 3 0 | 0',
            'trans 0 a 1 CoopL',
            'trans 0 b 2 CoopR',
            'trans 1 b 3 CoopR',
            'trans 2 a 3 CoopL',
        ]) + '\n'
        assert expected == lts.to_text()

    def test_equal_triples_are_ordered_by_rule(self):
        lines = build_lts(parse('a.0 & a.0')).to_text().splitlines()
        trans = [line for line in lines if line.startswith('trans')]

        assert trans[0].endswith('FuseJoinL')
        assert trans[1].endswith('FuseJoinR')

    def test_state_bound(self):
        lts = build_lts(parse('a.0 | b.0'), bounds=Bounds(max_states=2))

        assert lts.truncated
        assert (parse('a.0 | b.0'), parse('0 | b.0')) == lts.states
        assert [(0, Label('a'), 1)] == lts.triples()

    def test_depth_bound(self):
        lts = build_lts(parse('a.b.0'), bounds=Bounds(max_depth=1))

        assert lts.truncated
        assert 2 == len(lts.states)

    def test_depth_bound_at_deadlock_is_not_truncation(self):
        lts = build_lts(parse('a.0'), bounds=Bounds(max_depth=1))
        assert not lts.truncated

    def test_raising_state_bound_keeps_states(self):
        term = parse('(a.0 | b.c.0) & (b.0 + c.a.0)')
        full = build_lts(term)
        for bound in range(1, 12):
            smaller = build_lts(term, bounds=Bounds(max_states=bound))
            assert full.states[:len(smaller.states)] == smaller.states

    def test_bounds_default_to_the_scene(self):
        env = Environment(bounds=Bounds(max_states=1))
        assert build_lts(parse('a.0'), env).truncated

    def test_deterministic(self):
        term = parse('(a.0 | ~a.b.0) & (a.0 + b.0) \\ {c}')
        assert build_lts(term).to_text() == build_lts(term).to_text()

    def test_error_carries_state(self):
        env = Environment(constants={'X': Const('X')})
        with pytest.raises(DepthExceeded) as e:
            build_lts(parse('a.X'), env)
        assert Const('X') == e.value.state


class TestDiffusionPass(object):
    def test_bindings_are_recorded(self):
        lts = build_lts(parse('a.b.0'), diffusion=True)

        assert [(Label('a'), parse('b.0'), None), (Label('b'), NIL, None)] == \
            list(lts.diffusion_report)
        assert parse('b.0') == lts.environment.lookup_diffusion(Label('a'))

    def test_first_binding_wins(self):
        lts = build_lts(parse('a.b.0 + a.c.0'), diffusion=True)
        conflicts = [r for r in lts.diffusion_report if r.existing is not None]

        assert [(Label('a'), parse('c.0'), parse('b.0'))] == conflicts
        assert parse('b.0') == lts.environment.lookup_diffusion(Label('a'))

    def test_bindings_feed_later_states(self):
        lts = build_lts(parse('a.c.0 & b.0'), diffusion=True)
        spread = lts.index_of(parse('0 + C(a) + c.0'))
        rules = set(e.rule for e in lts.edges if e.source == spread)

        assert {Rule.CHOICE_L, Rule.CHOICE_R} == rules

    def test_states_keep_the_bindings_they_were_expanded_with(self):
        lts = build_lts(parse('C(b) + a.b.c.0'), diffusion=True)
        final = pseudopod.semantics.derive_transitions(lts.states[0], lts.environment)

        assert [Label('a')] == [e.action for e in lts.edges if e.source == 0]
        assert parse('c.0') == lts.environment.lookup_diffusion(Label('b'))
        assert Label('c') in set(t.action for t in final)

    def test_off_by_default(self):
        lts = build_lts(parse('a.b.0'))

        assert () == lts.diffusion_report
        assert None is lts.environment.lookup_diffusion(Label('a'))


class TestLts(object):
    def test_dot_export(self):
        env = Environment(coordinates={0: (1, 2)})
        dot = build_lts(parse('a.0 \\ {b}'), env).to_dot()

        assert dot.startswith('digraph lts {\n')
        assert '0 -> 1 [label="a (Hiding)"];' in dot
        assert 'label="0 \\\\ {b}"' in dot
        assert 'xlabel="p[1,2]"' in dot
        assert dot.endswith('}\n')

    def test_hand_built(self):
        lts = Lts(['p', 'q'], [(0, Label('a'), 1), (1, Label('b'), 0)])

        assert [(Label('a'), 1)] == lts.successors(0)
        assert 'trans 0 a 1 -' in lts.to_text()

    def test_unknown_state(self):
        with pytest.raises(ValueError):
            Lts(['p'], [(0, Label('a'), 1)])

    def test_disjoint_union(self):
        combined, offset = pseudopod.semantics.disjoint_union(
            build_lts(parse('a.0')), build_lts(parse('b.0')))

        assert 2 == offset
        assert 4 == len(combined)
        assert [(Label('b'), 3)] == combined.successors(2)


def test_reentered_diffusion_contributes_nothing():
    env = Environment().bind_diffusion(Label('a'), parse('0 + C(a) + c.0'))

    assert {('c', '0', 'Diffusion')} == moves('C(a)', env)
    assert {('c', '0', 'ChoiceL'), ('c', '0', 'ChoiceR')} == moves('0 + C(a) + c.0', env)
