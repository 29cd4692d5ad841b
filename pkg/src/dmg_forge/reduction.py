"""Rule partitioning, one-to-one reduction, and symbol typing.

Rules split into two zones by how many rules their lhs heads: two or more
(the non-deterministic zone) or exactly one (the deterministic zone).
Reduction rewrites every non-deterministic rule with a right part of
length != 1 into a pair ``B -> X; X -> rhs`` with a fresh nonterminal X,
after which every non-deterministic rule is one-to-one. Each symbol then
gets a type: "0" for terminals and lexical nonterminals, "!" for
OR-nonterminals (two or more rules), "&" for AND-nonterminals (one rule).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .grammar import Grammar, Rule, make_grammar


class SymbolType(enum.Enum):
    ZERO = "0"
    AND = "&"
    OR = "!"


@dataclass(frozen=True)
class RulePartition:
    znd: tuple[Rule, ...]
    zd: tuple[Rule, ...]


class BadInfinityError(Exception):
    """A single-rule nonterminal occurs in its own right part, so every
    derivation through it grows forever."""

    def __init__(self, rule: Rule):
        rhs = " ".join(rule.rhs) or "<empty>"
        super().__init__(
            f"rule {rule.lhs} -> {rhs} makes every derivation through "
            f"{rule.lhs!r} non-terminating"
        )
        self.rule = rule


@dataclass(frozen=True)
class FreshName:
    """Where a generated nonterminal came from."""

    origin_lhs: str
    origin_rhs: tuple[str, ...]
    origin_index: int


@dataclass(frozen=True)
class DndGrammar:
    grammar: Grammar
    types: dict[str, SymbolType]
    fresh_names: dict[str, FreshName]


def partition_rules(g: Grammar) -> RulePartition:
    """Split rules by lhs rule count (>=2 vs exactly 1), preserving order."""
    counts = g.rule_counts()
    znd = tuple(r for r in g.rules if counts[r.lhs] >= 2)
    zd = tuple(r for r in g.rules if counts[r.lhs] == 1)
    return RulePartition(znd=znd, zd=zd)


def assign_types(g: Grammar) -> dict[str, SymbolType]:
    """Type every grammar symbol: terminals and rule-less nonterminals "0",
    single-rule nonterminals "&", multi-rule nonterminals "!"."""
    counts = g.rule_counts()
    types: dict[str, SymbolType] = {}
    for name, sym in g.symbols.items():
        if sym.is_terminal:
            types[name] = SymbolType.ZERO
        else:
            n = counts.get(name, 0)
            if n == 0:
                types[name] = SymbolType.ZERO
            elif n == 1:
                types[name] = SymbolType.AND
            else:
                types[name] = SymbolType.OR
    return types


def _fresh_name(base: str, used: set[str]) -> str:
    n = 1
    while f"{base}{n}" in used:
        n += 1
    name = f"{base}{n}"
    used.add(name)
    return name


def reduce_to_dnd(g: Grammar) -> DndGrammar:
    """Rewrite multi-rule nonterminals' rules to one-to-one form.

    Fresh names are the lhs name plus the smallest integer suffix free in
    the grammar; rewritten rules keep their position and the new single-rule
    definitions are appended in creation order. Raises
    :class:`BadInfinityError` if any single-rule nonterminal of the result
    mentions itself on its right side.
    """
    for rule in g.rules:
        if rule.is_identity:
            raise ValueError(f"identity rule {rule.lhs} -> {rule.lhs}; validate first")

    counts = g.rule_counts()
    used = set(g.symbols)
    rewritten: list[Rule] = []
    appended: list[Rule] = []
    fresh: dict[str, FreshName] = {}
    for idx, rule in enumerate(g.rules):
        if counts[rule.lhs] >= 2 and len(rule.rhs) != 1:
            name = _fresh_name(rule.lhs, used)
            rewritten.append(Rule(rule.lhs, (name,)))
            appended.append(Rule(name, rule.rhs))
            fresh[name] = FreshName(rule.lhs, rule.rhs, idx)
        else:
            rewritten.append(rule)

    terminals = {s.name for s in g.symbols.values() if s.is_terminal}
    reduced = make_grammar(
        rules=tuple(rewritten + appended),
        start=g.start,
        terminals=terminals,
        lexical_sets=dict(g.lexical_sets),
    )

    new_counts = reduced.rule_counts()
    for rule in reduced.rules:
        if new_counts[rule.lhs] == 1 and rule.lhs in rule.rhs:
            raise BadInfinityError(rule)

    return DndGrammar(grammar=reduced, types=assign_types(reduced), fresh_names=fresh)
