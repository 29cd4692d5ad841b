"""Graph-level grammar analyses: reachability, productivity, cycles,
sublanguage extraction, and node/edge statistics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import Dmg
from .reduction import SymbolType


class NoSuchSymbolError(Exception):
    pass


class NotANonterminalError(Exception):
    pass


class CycleExplosionError(Exception):
    def __init__(self, limit: int):
        super().__init__(f"more than {limit} simple cycles; refusing to enumerate")
        self.limit = limit


@dataclass(frozen=True)
class CyclePath:
    """A simple directed cycle as an edge path.

    ``labels`` starts at the cycle's lexicographically smallest label;
    ``ordinals[i]`` numbers the edge from ``labels[i]`` to the next label
    (wrapping around). Parallel edges yield distinct cycles with equal
    labels but different ordinals.
    """

    labels: tuple[str, ...]
    ordinals: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"labels": list(self.labels), "ordinals": list(self.ordinals)}

    def render(self) -> str:
        steps = [f"{lab} -({o})->" for lab, o in zip(self.labels, self.ordinals)]
        return " ".join(steps) + f" {self.labels[0]}"


@dataclass(frozen=True)
class AnalysisReport:
    inaccessible: frozenset[str]
    useless: frozenset[str]
    cycles: tuple[CyclePath, ...]
    stats: dict[str, int]
    sublanguage_roots: dict[str, int]

    def as_dict(self) -> dict:
        return {
            "inaccessible": sorted(self.inaccessible),
            "useless": sorted(self.useless),
            "cycles": [c.as_dict() for c in self.cycles],
            "stats": dict(self.stats),
            "sublanguage_roots": {k: self.sublanguage_roots[k] for k in sorted(self.sublanguage_roots)},
        }

    def render_text(self) -> str:
        lines = []
        lines.append("inaccessible: " + (", ".join(sorted(self.inaccessible)) or "none"))
        lines.append("useless: " + (", ".join(sorted(self.useless)) or "none"))
        lines.append(f"cycles ({len(self.cycles)}):")
        for c in self.cycles:
            lines.append("  " + c.render())
        lines.append("stats:")
        for key, value in self.stats.items():
            lines.append(f"  {key}: {value}")
        lines.append("sublanguage roots (reachable nodes):")
        for name in sorted(self.sublanguage_roots):
            lines.append(f"  {name}: {self.sublanguage_roots[name]}")
        return "\n".join(lines) + "\n"


def _reachable_ids(g: Dmg, root_id: str) -> set[str]:
    seen: set[str] = set()
    stack = [root_id]
    while stack:
        nid = stack.pop()
        if nid in seen:
            continue
        seen.add(nid)
        stack.extend(e.dst for e in g.out(nid))
    return seen


def find_inaccessible(g: Dmg) -> set[str]:
    """Labels of nodes unreachable from the start node."""
    reachable = _reachable_ids(g, g.start)
    return {n.label for n in g.nodes if n.id not in reachable}


def find_useless(g: Dmg) -> set[str]:
    """Nonterminal labels from which no terminal chain derives.

    Productivity fixpoint: terminals are productive, lexical nonterminals
    are productive when their lexeme set is nonempty, an !-node when some
    child is, an &-node when all children are (so edge-less &-nodes are).
    """
    productive: set[str] = set()
    for n in g.nodes:
        if n.node_type is SymbolType.ZERO:
            if not g.is_lexical(n) or g.lexical_sets.get(n.label):
                productive.add(n.id)
    changed = True
    while changed:
        changed = False
        for n in g.nodes:
            if n.id in productive or n.node_type is SymbolType.ZERO:
                continue
            kids = [e.dst for e in g.out(n.id)]
            if n.node_type is SymbolType.OR:
                ok = any(k in productive for k in kids)
            else:
                ok = all(k in productive for k in kids)
            if ok:
                productive.add(n.id)
                changed = True
    useless: set[str] = set()
    for n in g.nodes:
        is_nonterminal = n.node_type is not SymbolType.ZERO or g.is_lexical(n)
        if is_nonterminal and n.id not in productive:
            useless.add(n.label)
    return useless


def find_cycles(g: Dmg, limit: int = 10_000) -> list[CyclePath]:
    """All simple directed cycles, as edge paths.

    Each cycle is reported once, rooted at its lexicographically smallest
    label; the result is sorted by (labels, ordinals). Raises
    :class:`CycleExplosionError` past ``limit`` cycles.
    """
    by_label = {n.label: n for n in g.nodes}
    order = sorted(by_label)
    cycles: list[CyclePath] = []

    for root_label in order:
        root = by_label[root_label]
        # DFS over nodes with labels >= root's; re-entering the root closes a cycle.
        path_labels: list[str] = [root.label]
        path_ordinals: list[int] = []
        on_path = {root.id}

        def walk(nid: str) -> None:
            for e in g.out(nid):
                target = g.node(e.dst)
                if e.dst == root.id:
                    cycles.append(
                        CyclePath(labels=tuple(path_labels), ordinals=tuple(path_ordinals + [e.ordinal]))
                    )
                    if len(cycles) > limit:
                        raise CycleExplosionError(limit)
                    continue
                if target.label <= root_label or e.dst in on_path:
                    continue
                on_path.add(e.dst)
                path_labels.append(target.label)
                path_ordinals.append(e.ordinal)
                walk(e.dst)
                on_path.discard(e.dst)
                path_labels.pop()
                path_ordinals.pop()

        walk(root.id)

    cycles.sort(key=lambda c: (c.labels, c.ordinals))
    return cycles


def sublanguage(g: Dmg, root_label: str) -> Dmg:
    """The subgraph reachable from a nonterminal, as a graph of its own.

    Every edge between the remainder and the result crosses in one
    direction only (into the result), which is what makes the cut a
    sublanguage boundary.
    """
    root = g.by_label(root_label)
    if root is None:
        raise NoSuchSymbolError(f"no symbol {root_label!r} in the graph")
    if root.node_type is SymbolType.ZERO and not g.is_lexical(root):
        raise NotANonterminalError(f"{root_label!r} is a terminal")
    keep = _reachable_ids(g, root.id)
    nodes = tuple(n for n in g.nodes if n.id in keep)
    edges = tuple(e for e in g.edges if e.src in keep)
    lexical_sets = {n.label: g.lexical_sets[n.label] for n in nodes if n.label in g.lexical_sets}
    return Dmg(nodes=nodes, edges=edges, start=root.id, lexical_sets=lexical_sets)


def statistics(g: Dmg) -> dict[str, int]:
    """Node/edge counts by type plus degree and cycle figures, in stable key order."""
    and_nodes = sum(1 for n in g.nodes if n.node_type is SymbolType.AND)
    or_nodes = sum(1 for n in g.nodes if n.node_type is SymbolType.OR)
    zero_nodes = sum(1 for n in g.nodes if n.node_type is SymbolType.ZERO)
    lexical = sum(1 for n in g.nodes if g.is_lexical(n))
    return {
        "nodes": len(g.nodes),
        "edges": len(g.edges),
        "and_nodes": and_nodes,
        "or_nodes": or_nodes,
        "zero_nodes": zero_nodes,
        "terminals": zero_nodes - lexical,
        "lexical_nonterminals": lexical,
        "max_out_degree": max((len(g.out(n.id)) for n in g.nodes), default=0),
        "cycle_count": len(find_cycles(g)),
    }


def analyze(g: Dmg) -> AnalysisReport:
    nonterminal_labels = [
        n.label for n in g.nodes if n.node_type is not SymbolType.ZERO or g.is_lexical(n)
    ]
    return AnalysisReport(
        inaccessible=frozenset(find_inaccessible(g)),
        useless=frozenset(find_useless(g)),
        cycles=tuple(find_cycles(g)),
        stats=statistics(g),
        sublanguage_roots={label: len(sublanguage(g, label).nodes) for label in nonterminal_labels},
    )


def report_json(report: AnalysisReport) -> str:
    return json.dumps(report.as_dict(), separators=(",", ":"), ensure_ascii=False)
