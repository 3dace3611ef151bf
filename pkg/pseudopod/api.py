# -*- coding: utf-8 -*-
#
# Pseudopod
#
# Copyright 2026 Pseudopod developers
#
# Available under the MIT license. See LICENSE for details.
#

"""
pseudopod.api
~~~~~~~~~~~~~

Publicly exposed Pseudopod classes and functions.
"""

from .core import (
    Bounds,
    PseudopodError)

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
    Nil,
    ParseError,
    Prefix,
    Program,
    Repel,
    Term,
    UnresolvedConstant,
    complement_term,
    depth,
    format_program,
    format_term,
    free_constants,
    parse,
    parse_program,
    size,
    sort)

from .environment import (
    DefinitionConflict,
    DiffusionConflict,
    Environment,
    SceneError,
    bind_diffusion,
    dump_scene,
    load_scene,
    lookup_attract,
    lookup_repel,
    resolve_constant)

from .semantics import (
    DepthExceeded,
    Edge,
    Lts,
    Rule,
    Transition,
    build_lts,
    derive_transitions,
    disjoint_union,
    replay)

from .streams import (
    EmptyStream,
    ExecutionFragment,
    Formula,
    IndexOutOfRange,
    KindMismatch,
    PartialValuation,
    RationalStream,
    UnboundVariable,
    Valuation,
    bounded_traces,
    derivative,
    enumerate_fragments,
    eval_formula,
    format_formula,
    head,
    nth,
    parse_formula,
    state_stream,
    state_streams,
    stream_equal,
    trace_of)

from .equivalence import (
    ConformanceReport,
    Partition,
    SizeLimit,
    SortOutOfUniverse,
    axiom_equal,
    bisimilar,
    bisimilarity,
    derived_connectives,
    distinguishing_actions,
    law_conformance,
    naive_bisim,
    normalize,
    refinement_history)

from .generate import (
    random_formula,
    random_lts,
    random_stream,
    random_term)

__all__ = [
    'Bounds',
    'PseudopodError',
    'NIL',
    'TAU',
    'Attract',
    'Choice',
    'Const',
    'Coop',
    'Diffuse',
    'Fuse',
    'Hide',
    'Label',
    'LabelSet',
    'Nil',
    'ParseError',
    'Prefix',
    'Program',
    'Repel',
    'Term',
    'UnresolvedConstant',
    'complement_term',
    'depth',
    'format_program',
    'format_term',
    'free_constants',
    'parse',
    'parse_program',
    'size',
    'sort',
    'DefinitionConflict',
    'DiffusionConflict',
    'Environment',
    'SceneError',
    'bind_diffusion',
    'dump_scene',
    'load_scene',
    'lookup_attract',
    'lookup_repel',
    'resolve_constant',
    'DepthExceeded',
    'Edge',
    'Lts',
    'Rule',
    'Transition',
    'build_lts',
    'derive_transitions',
    'disjoint_union',
    'replay',
    'EmptyStream',
    'ExecutionFragment',
    'Formula',
    'IndexOutOfRange',
    'KindMismatch',
    'PartialValuation',
    'RationalStream',
    'UnboundVariable',
    'Valuation',
    'bounded_traces',
    'derivative',
    'enumerate_fragments',
    'eval_formula',
    'format_formula',
    'head',
    'nth',
    'parse_formula',
    'state_stream',
    'state_streams',
    'stream_equal',
    'trace_of',
    'ConformanceReport',
    'Partition',
    'SizeLimit',
    'SortOutOfUniverse',
    'axiom_equal',
    'bisimilar',
    'bisimilarity',
    'derived_connectives',
    'distinguishing_actions',
    'law_conformance',
    'naive_bisim',
    'normalize',
    'refinement_history',
    'random_formula',
    'random_lts',
    'random_stream',
    'random_term'
]
