"""Acceptance suite: one test per release criterion, each printing a
PASS line (run with ``pytest tests/test_acceptance.py -v -s``).

The random corpus is generated once per run from a fixed seed: grammars
with at most 6 nonterminals, 3 alternatives per nonterminal, right parts
up to 4 symbols, kept only when the whole pipeline accepts them.
"""

from __future__ import annotations

import random
import time

import pytest
from fastapi.testclient import TestClient

from dmg_forge.cli import main
from dmg_forge.analysis import find_cycles
from dmg_forge.graph import Dmg, DmgEdge, build_dmg, check_wellformed
from dmg_forge.grammar import parse_grammar, validate, has_errors
from dmg_forge.language import language, oracle_enumerate
from dmg_forge.reduction import BadInfinityError, SymbolType, reduce_to_dnd
from dmg_forge.graph import AndCycleError
from dmg_forge.service import create_app
from dmg_forge import tad

from conftest import EXAMPLE1, EXAMPLE2, GRAMMARS, REPO_ROOT
from corpus import CorpusEntry, cached_oracle, corpus, dmg_min_yields, random_tad

BOUND = 8


@pytest.fixture(scope="module")
def full_corpus() -> list[CorpusEntry]:
    golden = [e for e in (corpus_entry(EXAMPLE1), corpus_entry(EXAMPLE2))]
    return golden + list(corpus(200))


def corpus_entry(text: str) -> CorpusEntry:
    g = parse_grammar(text)
    dnd = reduce_to_dnd(g)
    return CorpusEntry(seed=-1, text=text, grammar=g, dnd=dnd, dmg=build_dmg(dnd))


def _report(capsys, name: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPTANCE {name}: PASS")


def test_a01_dnd_golden_example1(capsys):
    golden = (REPO_ROOT / "tests" / "data" / "example1_dnd.golden").read_text()
    assert main(["dnd", str(GRAMMARS / "example1.g")]) == 0
    out = capsys.readouterr().out
    assert out == golden
    assert out == 'S -> S1 | B ;\nB -> B1 | B2 ;\nS1 -> "a" S "c" ;\nB1 -> "b" B "c" ;\nB2 -> ;\n'
    _report(capsys, "A01 reduced example-1 grammar equals the published five rules")


def test_a02_example1_dmg_structure(ex1_dmg, capsys):
    types = {n.label: n.node_type.value for n in ex1_dmg.nodes}
    assert types == {
        "S": "!",
        "B": "!",
        "S1": "&",
        "B1": "&",
        "B2": "&",
        "a": "0",
        "b": "0",
        "c": "0",
    }
    assert len(ex1_dmg.nodes) == 8
    assert len(ex1_dmg.edges) == 10
    degrees = {n.label: len(ex1_dmg.out(n.id)) for n in ex1_dmg.nodes}
    assert degrees == {"S": 2, "B": 2, "S1": 3, "B1": 3, "B2": 0, "a": 0, "b": 0, "c": 0}
    by_label = lambda lab: ex1_dmg.by_label(lab).id
    assert [(e.ordinal, e.dst) for e in ex1_dmg.out(by_label("S1"))] == [
        (1, by_label("a")),
        (2, by_label("S")),
        (3, by_label("c")),
    ]
    assert [(e.ordinal, e.dst) for e in ex1_dmg.out(by_label("B1"))] == [
        (1, by_label("b")),
        (2, by_label("B")),
        (3, by_label("c")),
    ]
    _report(capsys, "A02 example-1 graph: 8 typed nodes, 10 edges, exact out-degrees")


def test_a03_example1_cycle_count(ex1_dmg, capsys):
    cycles = find_cycles(ex1_dmg)
    assert len(cycles) == 2
    assert {c.labels for c in cycles} == {("S", "S1"), ("B", "B1")}
    _report(capsys, "A03 example-1 graph has exactly the two published cycles")


def test_a04_language_equivalence_corpus(full_corpus, capsys):
    started = time.monotonic()
    for entry in full_corpus:
        graph_side = language(entry.dmg, BOUND).chains
        oracle_side = cached_oracle(entry, BOUND).chains
        assert graph_side == oracle_side, f"language mismatch for:\n{entry.text}"
    elapsed = time.monotonic() - started
    assert elapsed < 60, f"equivalence sweep took {elapsed:.1f}s"
    _report(capsys, f"A04 graph language == rule oracle at bound {BOUND} on {len(full_corpus)} grammars "
        f"({elapsed:.1f}s)"
    )


def test_a05_example1_enumeration_bound4(ex1_dmg, capsys):
    want = {
        (),
        ("a", "c"),
        ("b", "c"),
        ("a", "a", "c", "c"),
        ("a", "b", "c", "c"),
        ("b", "b", "c", "c"),
    }
    assert language(ex1_dmg, 4).chains == frozenset(want)
    _report(capsys, "A05 example-1 enumeration at bound 4 is the exact six-chain set")


def test_a06_tad_soundness_random_walks(full_corpus, capsys):
    walks_per_grammar = 1000
    checked = 0
    skipped: list[str] = []
    for entry in full_corpus:
        low, _ = dmg_min_yields(entry.dmg)
        shortest = low[entry.dmg.start]
        if shortest > 12:
            # nothing derivable at checkable lengths (or at all): no walk completes
            skipped.append(entry.text.splitlines()[0])
            continue
        walk_bound = max(BOUND, int(shortest))
        sample = cached_oracle(entry, walk_bound)
        rng = random.Random(entry.seed * 7919 + 1)
        for _ in range(walks_per_grammar):
            done = random_tad(entry.dmg, rng, walk_bound)
            assert done is not None
            items = tad.crone_items(done)
            assert len(items) <= walk_bound
            assert items in sample.chains, f"unsound string {items!r} for:\n{entry.text}"
            checked += 1
    assert checked >= walks_per_grammar * (len(full_corpus) - len(skipped))
    _report(capsys, f"A06 {checked} random derivations all inside the oracle language "
        f"({len(skipped)} grammars skipped: nothing derivable at checkable lengths)"
    )


def test_a07_scripted_http_session_example2(capsys):
    client = TestClient(create_app())
    gid = client.post("/grammars", json={"text": EXAMPLE2}).json()["grammar_id"]
    state = client.post("/sessions", json={"grammar_id": gid}).json()
    sid = state["id"]
    root = state["frontier"][0]["node_id"]
    state = client.post(f"/sessions/{sid}/choices", json={"node_id": root, "ordinal": 1}).json()
    left, right = [f["node_id"] for f in state["frontier"]]
    state = client.post(f"/sessions/{sid}/choices", json={"node_id": left, "ordinal": 2}).json()
    state = client.post(f"/sessions/{sid}/choices", json={"node_id": right, "ordinal": 3}).json()
    assert state["status"] == "complete"
    result = client.get(f"/sessions/{sid}/result").json()
    assert result["status"] == "complete"
    assert result["string"] == "1+a"
    assert result["tad"]
    _report(capsys, 'A07 scripted HTTP session (1 / left 2 / right 3) completes with "1+a"')


def _mutations(g: Dmg):
    zero = next((n for n in g.nodes if n.node_type is SymbolType.ZERO), None)
    if zero is not None:
        other = g.nodes[0]
        yield "edge out of a 0-node", Dmg(
            nodes=g.nodes,
            edges=g.edges + (DmgEdge(zero.id, other.id, 1),),
            start=g.start,
            lexical_sets=g.lexical_sets,
        )
    for n in g.nodes:
        if n.node_type is SymbolType.OR:
            first = g.out(n.id)[0]
            yield "parallel !-edge", Dmg(
                nodes=g.nodes,
                edges=g.edges + (DmgEdge(n.id, first.dst, len(g.out(n.id)) + 1),),
                start=g.start,
                lexical_sets=g.lexical_sets,
            )
            yield "!-node degree below 2", Dmg(
                nodes=g.nodes,
                edges=tuple(e for e in g.edges if not (e.src == n.id and e.ordinal > 1)),
                start=g.start,
                lexical_sets=g.lexical_sets,
            )
            break


def test_a08_wellformedness_corpus_and_mutations(full_corpus, capsys):
    mutants = 0
    for entry in full_corpus:
        assert check_wellformed(entry.dmg) == [], f"ill-formed build for:\n{entry.text}"
        for name, mutant in _mutations(entry.dmg):
            assert check_wellformed(mutant) != [], f"mutation not caught: {name}"
            mutants += 1
    _report(capsys, f"A08 all {len(full_corpus)} built graphs well-formed; {mutants} forbidden-edge "
        "mutations caught"
    )


def test_a09_precondition_enforcement(capsys):
    identity = parse_grammar('S -> A | "s" ;\nA -> A ;')
    assert has_errors(validate(identity))

    with pytest.raises(BadInfinityError):
        reduce_to_dnd(parse_grammar('A -> "a" A ;'))

    with pytest.raises(AndCycleError):
        build_dmg(reduce_to_dnd(parse_grammar('S -> A | "x" ;\nA -> B ;\nB -> A ;')))
    _report(capsys, "A09 identity rule, self-embedding single rule, and &-cycle all rejected")


def _permute_or_ordinals(g: Dmg, rng: random.Random) -> Dmg:
    edges: list[DmgEdge] = []
    for n in g.nodes:
        out = list(g.out(n.id))
        if n.node_type is SymbolType.OR:
            targets = [e.dst for e in out]
            rng.shuffle(targets)
            out = [DmgEdge(n.id, dst, i) for i, dst in enumerate(targets, start=1)]
        edges.extend(out)
    return Dmg(nodes=g.nodes, edges=tuple(edges), start=g.start, lexical_sets=g.lexical_sets)


def _rename_decision_labels(g: Dmg) -> Dmg:
    mapping = {}
    counter = 0
    for n in g.nodes:
        if n.node_type in (SymbolType.OR, SymbolType.AND):
            counter += 1
            mapping[n.label] = f"R_{counter}"
    nodes = tuple(
        n if n.label not in mapping else type(n)(id=n.id, label=mapping[n.label], node_type=n.node_type)
        for n in g.nodes
    )
    return Dmg(nodes=nodes, edges=g.edges, start=g.start, lexical_sets=g.lexical_sets)


def test_a10_remark_invariances(full_corpus, capsys):
    rng = random.Random(424242)
    for entry in full_corpus:
        baseline = cached_oracle(entry, BOUND).chains
        permuted = _permute_or_ordinals(entry.dmg, rng)
        assert language(permuted, BOUND).chains == baseline, f"OR-order sensitive:\n{entry.text}"
        renamed = _rename_decision_labels(entry.dmg)
        assert language(renamed, BOUND).chains == baseline, f"label sensitive:\n{entry.text}"
    _report(capsys, f"A10 OR-edge reordering and !/&-label renaming leave the bound-{BOUND} language "
        f"unchanged on {len(full_corpus)} grammars"
    )
