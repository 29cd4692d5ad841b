"""Decision-making graph: construction, well-formedness checks, DOT/JSON export.

The graph has one node per grammar symbol, labeled with that symbol and
typed "0", "&" or "!". An OR-node has one outgoing edge per rule of its
nonterminal (in source order); an AND-node has one edge per right-part
position, numbered by that position. 0-nodes have no outgoing edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .grammar import Diagnostic, Severity
from .reduction import DndGrammar, SymbolType


@dataclass(frozen=True)
class DmgNode:
    id: str
    label: str
    node_type: SymbolType


@dataclass(frozen=True)
class DmgEdge:
    src: str
    dst: str
    ordinal: int  # 1-based position among src's outgoing edges


class AndCycleError(Exception):
    """A cycle runs entirely through edges leaving &-nodes; expanding any
    node on it never terminates."""

    def __init__(self, labels: list[str]):
        super().__init__("non-terminating chain of single-rule nonterminals: " + " -> ".join(labels))
        self.labels = labels


class InvariantViolationError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(d.message for d in diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Dmg:
    """Immutable decision-making graph.

    ``lexical_sets`` maps the label of each lexical 0-node (a nonterminal
    with no rules) to its allowed lexemes; terminals never appear in it.
    """

    nodes: tuple[DmgNode, ...]
    edges: tuple[DmgEdge, ...]
    start: str  # node id
    lexical_sets: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        by_id = {n.id: n for n in self.nodes}
        by_label = {n.label: n for n in self.nodes}
        out: dict[str, list[DmgEdge]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            if e.src in out:
                out[e.src].append(e)
        ordered = {nid: tuple(sorted(es, key=lambda e: e.ordinal)) for nid, es in out.items()}
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_by_label", by_label)
        object.__setattr__(self, "_out", ordered)

    def node(self, node_id: str) -> DmgNode:
        return self._by_id[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._by_id

    def by_label(self, label: str) -> DmgNode | None:
        return self._by_label.get(label)

    def out(self, node_id: str) -> tuple[DmgEdge, ...]:
        return self._out[node_id]

    def in_edges(self, node_id: str) -> tuple[DmgEdge, ...]:
        return tuple(e for e in self.edges if e.dst == node_id)

    def is_lexical(self, node: DmgNode) -> bool:
        return node.node_type is SymbolType.ZERO and node.label in self.lexical_sets


def build_dmg(d: DndGrammar) -> Dmg:
    """Construct the graph from a reduced grammar.

    Node ids equal labels on construction but stay opaque everywhere else
    (imports may carry arbitrary ids). Raises :class:`AndCycleError` when a
    cycle uses only edges out of &-nodes, and :class:`InvariantViolationError`
    if the result fails :func:`check_wellformed`.
    """
    g = d.grammar
    nodes = tuple(DmgNode(id=name, label=name, node_type=d.types[name]) for name in g.symbols)

    edges: list[DmgEdge] = []
    for name in g.symbols:
        node_type = d.types[name]
        if node_type is SymbolType.OR:
            for ordinal, rule in enumerate(g.rules_for(name), start=1):
                if len(rule.rhs) != 1:
                    raise ValueError(
                        f"rule {rule.lhs} -> {' '.join(rule.rhs)} is not one-to-one; reduce first"
                    )
                edges.append(DmgEdge(src=name, dst=rule.rhs[0], ordinal=ordinal))
        elif node_type is SymbolType.AND:
            (rule,) = g.rules_for(name)
            for ordinal, target in enumerate(rule.rhs, start=1):
                edges.append(DmgEdge(src=name, dst=target, ordinal=ordinal))

    lexical_sets = {
        name: tuple(g.lexical_sets.get(name, ())) for name in g.lexical_nonterminals()
    }
    dmg = Dmg(nodes=nodes, edges=tuple(edges), start=g.start, lexical_sets=lexical_sets)

    cycle = _find_and_cycle(dmg)
    if cycle is not None:
        raise AndCycleError(cycle)
    diagnostics = check_wellformed(dmg)
    if diagnostics:
        raise InvariantViolationError(diagnostics)
    return dmg


def _find_and_cycle(g: Dmg) -> list[str] | None:
    """Cycle search restricted to edges whose source is an &-node."""
    adj: dict[str, list[str]] = {}
    for n in g.nodes:
        if n.node_type is SymbolType.AND:
            adj[n.id] = [e.dst for e in g.out(n.id) if g.node(e.dst).node_type is SymbolType.AND]
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {nid: WHITE for nid in adj}
    for root in adj:
        if color[root] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(root, 0)]
        color[root] = GRAY
        path = [root]
        while stack:
            nid, i = stack[-1]
            if i < len(adj[nid]):
                stack[-1] = (nid, i + 1)
                nxt = adj[nid][i]
                if color[nxt] == GRAY:
                    labels = [g.node(x).label for x in path[path.index(nxt) :]]
                    return labels + [g.node(nxt).label]
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, 0))
                    path.append(nxt)
            else:
                color[nid] = BLACK
                stack.pop()
                path.pop()
    return None


def check_wellformed(g: Dmg) -> list[Diagnostic]:
    """Return one diagnostic per violated graph property; empty when sound."""
    out: list[Diagnostic] = []

    def bad(code: str, message: str, subject: str) -> None:
        out.append(Diagnostic(Severity.ERROR, code, message, subject))

    seen_labels: dict[str, str] = {}
    for n in g.nodes:
        other = seen_labels.get(n.label)
        if other is not None:
            bad("duplicate-label", f"label {n.label!r} marks nodes {other!r} and {n.id!r}", n.label)
        seen_labels[n.label] = n.id

    ids = {n.id for n in g.nodes}
    if g.start not in ids:
        bad("missing-start", f"start node {g.start!r} does not exist", g.start)
    for e in g.edges:
        if e.src not in ids or e.dst not in ids:
            bad("dangling-edge", f"edge {e.src!r} -> {e.dst!r} references a missing node", e.src)
        elif e.src == e.dst:
            bad("loop", f"node {g.node(e.src).label!r} has an edge to itself", e.src)

    for n in g.nodes:
        edges = g.out(n.id)
        ordinals = [e.ordinal for e in edges]
        if ordinals != list(range(1, len(edges) + 1)):
            bad(
                "bad-ordinals",
                f"outgoing edges of {n.label!r} are numbered {ordinals}, want 1..{len(edges)}",
                n.label,
            )
        if n.node_type is SymbolType.OR:
            if len(edges) < 2:
                bad(
                    "or-degree",
                    f"!-node {n.label!r} has {len(edges)} outgoing edge(s), want at least 2",
                    n.label,
                )
            targets = [e.dst for e in edges]
            if len(set(targets)) != len(targets):
                bad(
                    "or-parallel-edges",
                    f"!-node {n.label!r} has parallel outgoing edges",
                    n.label,
                )
        elif n.node_type is SymbolType.ZERO:
            if edges:
                bad("zero-degree", f"0-node {n.label!r} has outgoing edges", n.label)
    return out


_DOT_STYLE = {
    SymbolType.OR: ("diamond", "#f6b26b"),
    SymbolType.AND: ("box", "#9fc5e8"),
    SymbolType.ZERO: ("ellipse", "#d9ead3"),
}


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(g: Dmg) -> str:
    """Render the graph as a DOT digraph.

    Shapes and fill colors distinguish node types (they carry no other
    meaning). Only &-node edges show their ordinal: OR alternatives are
    numbered internally but the order is presentation-free.
    """
    lines = ["digraph dmg {", "  rankdir=TB;"]
    for n in g.nodes:
        shape, color = _DOT_STYLE[n.node_type]
        attrs = [
            f'label="{_dot_escape(n.label)}"',
            f"shape={shape}",
            'style="filled"',
            f'fillcolor="{color}"',
        ]
        if n.id == g.start:
            attrs.append("penwidth=2")
        if g.is_lexical(n):
            attrs[2] = 'style="filled,dashed"'
        lines.append(f'  "{_dot_escape(n.id)}" [{", ".join(attrs)}];')
    for n in g.nodes:
        for e in g.out(n.id):
            label = f' [label="{e.ordinal}"]' if n.node_type is SymbolType.AND else ""
            lines.append(f'  "{_dot_escape(e.src)}" -> "{_dot_escape(e.dst)}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: Dmg) -> str:
    """Canonical JSON: stable key order, compact separators, nodes in graph
    order, edges in node-then-ordinal order. ``lexical_sets`` appears only
    when the graph has lexical nonterminals."""
    payload: dict = {
        "start": g.start,
        "nodes": [{"id": n.id, "label": n.label, "type": n.node_type.value} for n in g.nodes],
        "edges": [
            {"from": e.src, "to": e.dst, "ordinal": e.ordinal}
            for n in g.nodes
            for e in g.out(n.id)
        ],
    }
    if g.lexical_sets:
        payload["lexical_sets"] = {
            label: list(g.lexical_sets[label]) for label in sorted(g.lexical_sets)
        }
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def import_json(text: str) -> Dmg:
    """Parse :func:`export_json` output back into a graph."""
    payload = json.loads(text)
    type_by_code = {t.value: t for t in SymbolType}
    nodes = tuple(
        DmgNode(id=n["id"], label=n["label"], node_type=type_by_code[n["type"]])
        for n in payload["nodes"]
    )
    edges = tuple(
        DmgEdge(src=e["from"], dst=e["to"], ordinal=e["ordinal"]) for e in payload["edges"]
    )
    lexical_sets = {
        label: tuple(lexemes) for label, lexemes in payload.get("lexical_sets", {}).items()
    }
    return Dmg(nodes=nodes, edges=edges, start=payload["start"], lexical_sets=lexical_sets)
