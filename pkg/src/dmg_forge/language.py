"""Bounded chain derivation on the graph, plus a grammar-level oracle.

A chain is a tuple of items (terminal spellings and lexemes, one item
each). Chains derive recursively: a terminal 0-node yields its own symbol,
a lexical 0-node yields each of its lexemes, an OR-node yields whatever
any child yields, and an AND-node yields the concatenation of its
children's chains in edge order (the empty chain when it has no edges).

``oracle_enumerate`` computes the same bounded language directly from the
original, unreduced grammar and never touches the graph; differential
tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grammar import Grammar
from .graph import Dmg
from .reduction import SymbolType

Chain = tuple[str, ...]


@dataclass(frozen=True)
class LanguageSample:
    bound: int
    chains: frozenset[Chain]

    def strings(self) -> list[str]:
        return sorted("".join(c) for c in self.chains)


def _concat_bounded(partials: set[Chain], chains: set[Chain] | frozenset[Chain], bound: int) -> set[Chain]:
    out: set[Chain] = set()
    for p in partials:
        room = bound - len(p)
        for c in chains:
            if len(c) <= room:
                out.add(p + c)
    return out


def derive_from(g: Dmg, node_id: str, bound: int) -> LanguageSample:
    """All chains of length <= bound derivable from a node.

    Length-bounded fixpoint iteration: cycles in the graph only ever add
    chains, and chains no longer than the bound form a finite set, so the
    iteration stabilizes.
    """
    reachable: set[str] = set()
    stack = [node_id]
    while stack:
        nid = stack.pop()
        if nid in reachable:
            continue
        reachable.add(nid)
        stack.extend(e.dst for e in g.out(nid))

    sets: dict[str, set[Chain]] = {}
    growing: list[str] = []
    for nid in reachable:
        node = g.node(nid)
        if node.node_type is SymbolType.ZERO:
            if g.is_lexical(node):
                base = {(lex,) for lex in g.lexical_sets[node.label]}
            else:
                base = {(node.label,)}
            sets[nid] = {c for c in base if len(c) <= bound}
        else:
            sets[nid] = set()
            growing.append(nid)

    changed = True
    while changed:
        changed = False
        for nid in growing:
            node = g.node(nid)
            if node.node_type is SymbolType.OR:
                fresh: set[Chain] = set()
                for e in g.out(nid):
                    fresh |= sets[e.dst]
            else:  # AND: concatenate children in ordinal order
                fresh = {()}
                for e in g.out(nid):
                    fresh = _concat_bounded(fresh, sets[e.dst], bound)
                    if not fresh:
                        break
            if not fresh <= sets[nid]:
                sets[nid] |= fresh
                changed = True
    return LanguageSample(bound=bound, chains=frozenset(sets[node_id]))


def language(g: Dmg, bound: int) -> LanguageSample:
    """Chains derivable from the start node."""
    return derive_from(g, g.start, bound)


def oracle_enumerate(g: Grammar, bound: int) -> LanguageSample:
    """All terminal strings of length <= bound derivable in the original grammar.

    Works on the raw rules by bounded fixpoint: each round re-derives every
    lhs from the current chain sets of its right-part symbols, pruning
    anything over the bound. Lexical nonterminals contribute each declared
    lexeme as a single item.
    """
    counts = g.rule_counts()
    base: dict[str, frozenset[Chain]] = {}
    for name, sym in g.symbols.items():
        if sym.is_terminal:
            base[name] = frozenset({(name,)} if bound >= 1 else set())
        elif counts.get(name, 0) == 0:
            lexemes = g.lexical_sets.get(name, ())
            base[name] = frozenset({(lex,) for lex in lexemes} if bound >= 1 else set())

    sets: dict[str, set[Chain]] = {name: set() for name in g.symbols if name not in base}

    def chains_of(name: str) -> set[Chain] | frozenset[Chain]:
        return base[name] if name in base else sets[name]

    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            partials: set[Chain] = {()}
            for name in rule.rhs:
                partials = _concat_bounded(partials, chains_of(name), bound)
                if not partials:
                    break
            if not partials <= sets[rule.lhs]:
                sets[rule.lhs] |= partials
                changed = True

    start_chains = chains_of(g.start)
    return LanguageSample(bound=bound, chains=frozenset(start_chains))
