from __future__ import annotations

from dmg_forge.graph import build_dmg
from dmg_forge.grammar import parse_grammar
from dmg_forge.language import derive_from, language, oracle_enumerate
from dmg_forge.reduction import reduce_to_dnd

from bfs_enum import enumerate_sentential

EX1_BOUND4 = frozenset(
    {
        (),
        ("a", "c"),
        ("b", "c"),
        ("a", "a", "c", "c"),
        ("a", "b", "c", "c"),
        ("b", "b", "c", "c"),
    }
)


def test_derive_example1_bound4(ex1_dmg):
    assert derive_from(ex1_dmg, ex1_dmg.start, 4).chains == EX1_BOUND4


def test_derive_from_terminal_node(ex1_dmg):
    node = ex1_dmg.by_label("a")
    assert derive_from(ex1_dmg, node.id, 1).chains == frozenset({("a",)})
    assert derive_from(ex1_dmg, node.id, 0).chains == frozenset()


def test_derive_from_epsilon_and_node(ex1_dmg):
    node = ex1_dmg.by_label("B2")
    for bound in (0, 1, 5):
        assert derive_from(ex1_dmg, node.id, bound).chains == frozenset({()})


def test_language_example1_bound2(ex1_dmg):
    assert language(ex1_dmg, 2).chains == frozenset({(), ("a", "c"), ("b", "c")})


def test_language_example2_bound3(ex2_dmg):
    assert language(ex2_dmg, 3).chains == frozenset(
        {
            ("1",),
            ("a",),
            ("1", "+", "1"),
            ("1", "+", "a"),
            ("a", "+", "1"),
            ("a", "+", "a"),
        }
    )


def test_language_epsilon_grammar():
    dmg = build_dmg(reduce_to_dnd(parse_grammar("S -> ;")))
    for bound in (0, 3):
        assert language(dmg, bound).chains == frozenset({()})


def test_oracle_example1_bound4(ex1_grammar):
    assert oracle_enumerate(ex1_grammar, 4).chains == EX1_BOUND4


def test_oracle_bound_zero_prunes():
    g = parse_grammar('S -> "a" ;')
    assert oracle_enumerate(g, 0).chains == frozenset()


def test_oracle_example2_bound1(ex2_grammar):
    assert oracle_enumerate(ex2_grammar, 1).chains == frozenset({("1",), ("a",)})


def test_lexical_chains(lex_grammar, lex_dmg):
    # Id "=" (Id | Num) with Id in {x,y}, Num in {0,1}
    want = frozenset(
        {(a, "=", b) for a in ("x", "y") for b in ("x", "y", "0", "1")}
    )
    assert language(lex_dmg, 3).chains == want
    assert oracle_enumerate(lex_grammar, 3).chains == want


def test_lexeme_counts_as_one_item():
    g = parse_grammar('S -> Id ;\n%lexical Id = "longword" ;')
    dmg = build_dmg(reduce_to_dnd(g))
    assert language(dmg, 1).chains == frozenset({("longword",)})


def test_empty_lexical_set_derives_nothing():
    g = parse_grammar("S -> Id ;")
    dmg = build_dmg(reduce_to_dnd(g))
    assert language(dmg, 5).chains == frozenset()


def test_bound_monotonic(ex1_dmg, ex2_dmg):
    for dmg in (ex1_dmg, ex2_dmg):
        prev = frozenset()
        for bound in range(0, 7):
            cur = language(dmg, bound).chains
            assert prev <= cur
            prev = cur


def test_graph_language_equals_oracle_on_goldens(ex1_grammar, ex1_dmg, ex2_grammar, ex2_dmg):
    for g, dmg in ((ex1_grammar, ex1_dmg), (ex2_grammar, ex2_dmg)):
        for bound in (0, 3, 6):
            assert language(dmg, bound).chains == oracle_enumerate(g, bound).chains


def test_oracle_cross_checked_by_sentential_bfs(ex1_grammar, ex2_grammar, lex_grammar):
    for g in (ex1_grammar, ex2_grammar, lex_grammar):
        for bound in (0, 2, 5):
            assert oracle_enumerate(g, bound).chains == enumerate_sentential(g, bound)
