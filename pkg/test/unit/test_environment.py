# -*- coding: utf-8 -*-
import pytest

import pseudopod.environment
from pseudopod.core import Bounds
from pseudopod.environment import (
    DefinitionConflict,
    DiffusionConflict,
    Environment,
    SceneError,
    dump_scene,
    load_scene)
from pseudopod.syntax import Const, Label, LabelSet, UnresolvedConstant, parse

SCENE = """
# two attractants and a repellent
universe a b c
A: a -> b
A: ~b -> c
R: c -> ~a
C: a := b.0
X := a.X
Y := b.X + c.0
bound states 50
bound depth 7
bound unfold 9
prop hungry 0 T
prop hungry 1 F
cell 0 1 2
"""


class TestLoadScene(object):
    def setup_method(self):
        self.env = load_scene(SCENE)

    def test_universe(self):
        assert LabelSet.of('a', 'b', 'c') == self.env.universe

    def test_tables(self):
        assert Label('b') == pseudopod.environment.lookup_attract(self.env, Label('a'))
        assert Label('c') == pseudopod.environment.lookup_attract(self.env, Label('b', True))
        assert Label('a', True) == pseudopod.environment.lookup_repel(self.env, Label('c'))

    def test_undefined_lookups(self):
        assert None is pseudopod.environment.lookup_attract(self.env, Label('c'))
        assert None is pseudopod.environment.lookup_repel(self.env, Label('a'))
        assert None is self.env.lookup_diffusion(Label('b'))

    def test_diffusion(self):
        assert parse('b.0') == self.env.lookup_diffusion(Label('a'))

    def test_constants(self):
        assert parse('a.X') == pseudopod.environment.resolve_constant(self.env, 'X')
        assert parse('b.X + c.0') == self.env.resolve_constant('Y')

    def test_unresolved_constant(self):
        with pytest.raises(UnresolvedConstant):
            self.env.resolve_constant('Z')

    def test_bounds(self):
        assert Bounds(max_states=50, max_depth=7, max_unfold=9) == self.env.bounds

    def test_valuation_and_coordinates(self):
        assert {('hungry', 0): True, ('hungry', 1): False} == self.env.valuation
        assert {0: (1, 2)} == self.env.coordinates


def test_load_scene_example():
    env = load_scene('universe a b\nA: a -> b')
    assert Label('b') == env.lookup_attract(Label('a'))


def test_load_scene_defaults():
    env = load_scene('')

    assert Environment() == env
    assert Bounds() == env.bounds
    assert 0 == len(env.universe)


def test_directive_order_does_not_matter():
    env = load_scene('A: a -> b\nuniverse a b')
    assert Label('b') == env.lookup_attract(Label('a'))


@pytest.mark.parametrize('text,line_number', [
    ('universe a\nA: a -> c', 2),
    ('universe a\n\nR: ~d -> a', 3),
    ('universe a\nfrobnicate a', 2),
    ('X := a.Y', 1),
    ('X := a.\n', 1),
    ('X := a.X\nX := b.X', 2),
    ('C: a := 0\nC: a := a.0', 2),
    ('universe a\nA: a -> a\nA: a -> ~a', 3),
    ('bound states 0', 1),
    ('bound width 3', 1),
    ('prop p x T', 1),
    ('prop p 0 maybe', 1),
    ('prop p 0 T\nprop p 0 F', 2),
    ('cell 0 1', 1),
    ('universe a Tau', 1),
])
def test_scene_errors(text, line_number):
    with pytest.raises(SceneError) as e:
        load_scene(text)
    assert line_number == e.value.line_number


def test_scene_error_is_value_error():
    with pytest.raises(ValueError):
        load_scene('nonsense')


def test_dump_scene_round_trip():
    env = load_scene(SCENE)
    assert env == load_scene(dump_scene(env))


def test_dump_scene_is_canonical():
    env = load_scene('X := a.X\nuniverse b a\nA: b -> a\nbound depth 3\n')
    assert 'universe a b\nA: b -> a\nX := a.X\nbound depth 3\n' == dump_scene(env)


def test_dump_empty_scene():
    assert '' == dump_scene(Environment())


class TestBindDiffusion(object):
    def test_bind_returns_new_environment(self):
        env = Environment()
        bound = pseudopod.environment.bind_diffusion(env, Label('a'), parse('b.0'))

        assert parse('b.0') == bound.lookup_diffusion(Label('a'))
        assert None is env.lookup_diffusion(Label('a'))

    def test_identical_rebind_is_idempotent(self):
        env = Environment().bind_diffusion(Label('a'), parse('b.0'))
        assert env is env.bind_diffusion(Label('a'), parse('b.0'))

    def test_conflicting_rebind(self):
        env = Environment().bind_diffusion(Label('a'), parse('b.0'))
        with pytest.raises(DiffusionConflict) as e:
            env.bind_diffusion(Label('a'), parse('c.0'))
        assert Label('a') == e.value.label


class TestDefine(object):
    def test_define(self):
        env = Environment().define('X', parse('a.X'))
        assert parse('a.X') == env.resolve_constant('X')

    def test_identical_definition(self):
        env = Environment().define('X', parse('a.X'))
        assert env is env.define('X', parse('a.X'))

    def test_conflicting_definition(self):
        env = Environment().define('X', parse('a.X'))
        with pytest.raises(DefinitionConflict):
            env.define('X', Const('X'))


def test_universe_holds_activators_only():
    with pytest.raises(ValueError):
        Environment(universe=LabelSet.of('~a'))
