from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from dmg_forge.grammar import Severity, parse_grammar, render_grammar, validate
from dmg_forge.graph import check_wellformed
from dmg_forge.language import language, oracle_enumerate
from dmg_forge.reduction import partition_rules, reduce_to_dnd
from dmg_forge import tad

from corpus import dmg_min_yields, random_grammar_text, random_tad, try_build


@st.composite
def grammar_texts(draw):
    seed = draw(st.integers(min_value=0, max_value=10**9))
    return random_grammar_text(random.Random(seed))


@st.composite
def valid_entries(draw):
    seed = draw(st.integers(min_value=0, max_value=10**9))
    rng = random.Random(seed)
    for _ in range(50):
        entry = try_build(random_grammar_text(rng))
        if entry is not None:
            return entry
    raise AssertionError("no valid grammar in 50 draws")


@settings(max_examples=60, deadline=None)
@given(grammar_texts())
def test_parse_is_deterministic(text):
    try:
        first = parse_grammar(text)
    except Exception:
        return
    assert parse_grammar(text) == first


@settings(max_examples=60, deadline=None)
@given(grammar_texts())
def test_render_round_trips(text):
    try:
        g = parse_grammar(text)
    except Exception:
        return
    again = parse_grammar(render_grammar(g))
    assert again == g


@settings(max_examples=60, deadline=None)
@given(grammar_texts())
def test_validate_finds_identity_iff_present(text):
    try:
        g = parse_grammar(text)
    except Exception:
        return
    has_identity = any(r.is_identity for r in g.rules)
    found = any(d.code == "identity-rule" for d in validate(g))
    assert found == has_identity


@settings(max_examples=40, deadline=None)
@given(valid_entries())
def test_partition_covers_rules_disjointly(entry):
    part = partition_rules(entry.grammar)
    assert sorted(part.znd + part.zd, key=lambda r: entry.grammar.rules.index(r)) == list(
        entry.grammar.rules
    )
    counts = entry.grammar.rule_counts()
    assert all(counts[r.lhs] >= 2 for r in part.znd)
    assert all(counts[r.lhs] == 1 for r in part.zd)


@settings(max_examples=40, deadline=None)
@given(valid_entries())
def test_reduction_invariants(entry):
    dnd = entry.dnd
    part = partition_rules(dnd.grammar)
    assert all(len(r.rhs) == 1 for r in part.znd)
    again = reduce_to_dnd(dnd.grammar)
    assert again.fresh_names == {}
    assert again.grammar.rules == dnd.grammar.rules


@settings(max_examples=40, deadline=None)
@given(valid_entries())
def test_built_graphs_are_wellformed(entry):
    assert check_wellformed(entry.dmg) == []


@settings(max_examples=40, deadline=None)
@given(valid_entries())
def test_node_and_edge_counts(entry):
    g = entry.dnd.grammar
    assert len(entry.dmg.nodes) == len(g.symbols)
    counts = g.rule_counts()
    expected_edges = 0
    for name in g.nonterminals():
        n = counts.get(name, 0)
        if n >= 2:
            expected_edges += n
        elif n == 1:
            (rule,) = g.rules_for(name)
            expected_edges += len(rule.rhs)
    assert len(entry.dmg.edges) == expected_edges


@settings(max_examples=25, deadline=None)
@given(valid_entries(), st.integers(min_value=0, max_value=5))
def test_language_monotone_in_bound(entry, bound):
    small = language(entry.dmg, bound).chains
    big = language(entry.dmg, bound + 1).chains
    assert small <= big


@settings(max_examples=25, deadline=None)
@given(valid_entries())
def test_reduction_preserves_bounded_language(entry):
    # oracle on the original rules vs oracle on the reduced rules
    assert (
        oracle_enumerate(entry.grammar, 8).chains
        == oracle_enumerate(entry.dnd.grammar, 8).chains
    )


@settings(max_examples=25, deadline=None)
@given(valid_entries(), st.integers(min_value=0, max_value=2**30))
def test_random_walks_stay_sound(entry, seed):
    done = random_tad(entry.dmg, random.Random(seed), bound=6)
    if done is None:
        return
    items = tad.crone_items(done)
    assert len(items) <= 6
    assert items in oracle_enumerate(entry.grammar, 6).chains


@settings(max_examples=30, deadline=None)
@given(valid_entries())
def test_auto_expand_is_fixpoint(entry):
    t = tad.auto_expand(tad.new_atad(entry.dmg))
    assert tad.auto_expand(t) is t
    assert all(
        t.nodes[nid].state is not tad.NodeState.PENDING_EXPAND for nid in t.pending
    )


@settings(max_examples=40, deadline=None)
@given(valid_entries())
def test_useless_matches_shortest_yield(entry):
    # independent emptiness oracle: a node is non-productive exactly when its
    # shortest completed length is infinite
    from dmg_forge.analysis import find_useless
    from dmg_forge.reduction import SymbolType

    low, _ = dmg_min_yields(entry.dmg)
    useless = find_useless(entry.dmg)
    for n in entry.dmg.nodes:
        if n.node_type is SymbolType.ZERO and not entry.dmg.is_lexical(n):
            continue
        assert (n.label in useless) == (low[n.id] == float("inf"))


@settings(max_examples=40, deadline=None)
@given(valid_entries())
def test_sublanguage_of_start_has_no_inaccessible(entry):
    from dmg_forge.analysis import find_inaccessible, sublanguage

    start_label = entry.dmg.node(entry.dmg.start).label
    assert find_inaccessible(sublanguage(entry.dmg, start_label)) == set()


def test_dedup_warning_surfaces():
    g = parse_grammar('S -> "a" | "a" | B ;\nB -> "b" ;')
    diags = validate(g)
    assert sum(1 for d in diags if d.code == "duplicate-alternative") == 1
    assert len(g.rules_for("S")) == 2
