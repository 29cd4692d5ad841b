"""Decision trees grown over a graph.

A tree starts as a single root labeled with the start symbol. An !-leaf
grows by choosing one outgoing graph edge (the child edge keeps the chosen
number); an &-leaf grows all its graph edges at once, or becomes an empty
leaf when the graph node has none. Once nothing is pending, the completed
tree's leaves, read left to right, spell the derived string; empty leaves
vanish from it.

All operations are value-semantic: they return a new tree and leave the
input untouched, so a history of snapshots is enough for undo.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .graph import Dmg
from .reduction import SymbolType


class TadError(Exception):
    pass


class NotAFrontierLeafError(TadError):
    pass


class NotOrNodeError(TadError):
    pass


class NotAndNodeError(TadError):
    pass


class NoSuchOrdinalError(TadError):
    pass


class NotLexicalLeafError(TadError):
    pass


class LexemeNotAllowedError(TadError):
    pass


class IncompleteAtadError(TadError):
    def __init__(self, pending_ids: tuple[int, ...]):
        super().__init__("tree still has pending nodes: " + ", ".join(map(str, pending_ids)))
        self.pending_ids = pending_ids


class NodeState(enum.Enum):
    PENDING_CHOICE = "pending_choice"  # !-leaf awaiting an alternative
    PENDING_EXPAND = "pending_expand"  # &-leaf awaiting expansion
    EXPANDED = "expanded"  # interior node
    LEAF_ZERO = "leaf0"  # terminal leaf
    LEAF_EPSILON = "leaf_epsilon"  # &-leaf whose graph node has no edges
    LEXEME_PENDING = "lexeme_pending"  # lexical leaf awaiting a value
    LEXEME_FILLED = "lexeme_filled"


_PENDING = frozenset({NodeState.PENDING_CHOICE, NodeState.PENDING_EXPAND, NodeState.LEXEME_PENDING})


@dataclass(frozen=True)
class AtadNode:
    id: int
    label: str
    dmg_id: str
    state: NodeState
    lexeme: str | None = None


@dataclass(frozen=True)
class Atad:
    """A growing decision tree (an immutable snapshot of one).

    ``children`` maps a node id to its (ordinal, child id) pairs in creation
    order; ``pending`` lists actionable leaves left to right.
    """

    dmg: Dmg
    nodes: dict[int, AtadNode]
    children: dict[int, tuple[tuple[int, int], ...]]
    root: int
    pending: tuple[int, ...]
    next_id: int

    def node(self, node_id: int) -> AtadNode:
        return self.nodes[node_id]

    def is_complete(self) -> bool:
        return not self.pending

    def leaves(self) -> list[AtadNode]:
        """All current leaves in left-to-right tree order."""
        out: list[AtadNode] = []
        stack = [self.root]
        while stack:
            nid = stack.pop()
            node = self.nodes[nid]
            if node.state is NodeState.EXPANDED:
                stack.extend(cid for _, cid in reversed(self.children.get(nid, ())))
            else:
                out.append(node)
        return out


def _initial_state(g: Dmg, dmg_id: str) -> NodeState:
    node = g.node(dmg_id)
    if node.node_type is SymbolType.OR:
        return NodeState.PENDING_CHOICE
    if node.node_type is SymbolType.AND:
        return NodeState.PENDING_EXPAND
    if g.is_lexical(node):
        return NodeState.LEXEME_PENDING
    return NodeState.LEAF_ZERO


def new_atad(g: Dmg) -> Atad:
    """A single node labeled with the start symbol."""
    root = AtadNode(id=0, label=g.node(g.start).label, dmg_id=g.start, state=_initial_state(g, g.start))
    pending = (0,) if root.state in _PENDING else ()
    return Atad(dmg=g, nodes={0: root}, children={}, root=0, pending=pending, next_id=1)


def _splice_pending(pending: tuple[int, ...], at: int, insert: tuple[int, ...]) -> tuple[int, ...]:
    i = pending.index(at)
    return pending[:i] + insert + pending[i + 1 :]


def choose(t: Atad, leaf: int, ordinal: int) -> Atad:
    """Grow one child under an !-leaf along the graph edge with that number."""
    node = t.nodes.get(leaf)
    if node is None or node.id not in t.pending:
        raise NotAFrontierLeafError(f"node {leaf} is not an actionable leaf")
    if node.state is not NodeState.PENDING_CHOICE:
        raise NotOrNodeError(f"node {leaf} ({node.label!r}) does not offer alternatives")
    edge = next((e for e in t.dmg.out(node.dmg_id) if e.ordinal == ordinal), None)
    if edge is None:
        count = len(t.dmg.out(node.dmg_id))
        raise NoSuchOrdinalError(f"{node.label!r} has alternatives 1..{count}, not {ordinal}")

    child = AtadNode(
        id=t.next_id,
        label=t.dmg.node(edge.dst).label,
        dmg_id=edge.dst,
        state=_initial_state(t.dmg, edge.dst),
    )
    nodes = dict(t.nodes)
    nodes[leaf] = replace(node, state=NodeState.EXPANDED)
    nodes[child.id] = child
    children = dict(t.children)
    children[leaf] = ((ordinal, child.id),)
    insert = (child.id,) if child.state in _PENDING else ()
    return Atad(
        dmg=t.dmg,
        nodes=nodes,
        children=children,
        root=t.root,
        pending=_splice_pending(t.pending, leaf, insert),
        next_id=t.next_id + 1,
    )


def expand_and(t: Atad, leaf: int) -> Atad:
    """Grow all children of an &-leaf at once, in edge order."""
    node = t.nodes.get(leaf)
    if node is None or node.id not in t.pending:
        raise NotAFrontierLeafError(f"node {leaf} is not an actionable leaf")
    if node.state is not NodeState.PENDING_EXPAND:
        raise NotAndNodeError(f"node {leaf} ({node.label!r}) is not an expandable &-node")

    edges = t.dmg.out(node.dmg_id)
    nodes = dict(t.nodes)
    children = dict(t.children)
    if not edges:
        nodes[leaf] = replace(node, state=NodeState.LEAF_EPSILON)
        children[leaf] = ()
        return Atad(
            dmg=t.dmg,
            nodes=nodes,
            children=children,
            root=t.root,
            pending=_splice_pending(t.pending, leaf, ()),
            next_id=t.next_id,
        )

    nodes[leaf] = replace(node, state=NodeState.EXPANDED)
    kid_entries: list[tuple[int, int]] = []
    insert: list[int] = []
    next_id = t.next_id
    for e in edges:
        child = AtadNode(
            id=next_id,
            label=t.dmg.node(e.dst).label,
            dmg_id=e.dst,
            state=_initial_state(t.dmg, e.dst),
        )
        nodes[child.id] = child
        kid_entries.append((e.ordinal, child.id))
        if child.state in _PENDING:
            insert.append(child.id)
        next_id += 1
    children[leaf] = tuple(kid_entries)
    return Atad(
        dmg=t.dmg,
        nodes=nodes,
        children=children,
        root=t.root,
        pending=_splice_pending(t.pending, leaf, tuple(insert)),
        next_id=next_id,
    )


def auto_expand(t: Atad) -> Atad:
    """Apply &-expansion until no expandable leaf remains.

    Terminates because graphs with a cycle of &-node edges are rejected at
    build time.
    """
    while True:
        leaf = next(
            (nid for nid in t.pending if t.nodes[nid].state is NodeState.PENDING_EXPAND), None
        )
        if leaf is None:
            return t
        t = expand_and(t, leaf)


def set_lexeme(t: Atad, leaf: int, value: str) -> Atad:
    """Fill a lexical leaf with one of its allowed lexemes."""
    node = t.nodes.get(leaf)
    if node is None or node.state is not NodeState.LEXEME_PENDING:
        raise NotLexicalLeafError(f"node {leaf} is not an unfilled lexical leaf")
    allowed = t.dmg.lexical_sets.get(node.label, ())
    if value not in allowed:
        raise LexemeNotAllowedError(
            f"{value!r} is not an allowed lexeme of {node.label!r} (allowed: {', '.join(allowed) or 'none'})"
        )
    nodes = dict(t.nodes)
    nodes[leaf] = replace(node, state=NodeState.LEXEME_FILLED, lexeme=value)
    return Atad(
        dmg=t.dmg,
        nodes=nodes,
        children=t.children,
        root=t.root,
        pending=_splice_pending(t.pending, leaf, ()),
        next_id=t.next_id,
    )


@dataclass(frozen=True)
class Tad:
    """A fully decided tree: nothing pending, every lexical leaf filled."""

    atad: Atad


def finalize(t: Atad) -> Tad:
    if t.pending:
        raise IncompleteAtadError(t.pending)
    return Tad(atad=t)


def crone_items(t: Tad) -> tuple[str, ...]:
    """Leaf items left to right; empty leaves contribute nothing."""
    items: list[str] = []
    for leaf in t.atad.leaves():
        if leaf.state is NodeState.LEAF_ZERO:
            items.append(leaf.label)
        elif leaf.state is NodeState.LEXEME_FILLED:
            assert leaf.lexeme is not None
            items.append(leaf.lexeme)
        # LEAF_EPSILON: gone from the string
    return tuple(items)


def crone(t: Tad) -> str:
    """The derived string: leaf items concatenated."""
    return "".join(crone_items(t))


def tree_json(t: Atad, node_id: int | None = None) -> dict:
    """Nested JSON view of the tree; child entries carry their edge number."""
    nid = t.root if node_id is None else node_id
    node = t.nodes[nid]
    out: dict = {"id": str(node.id), "label": node.label, "state": node.state.value}
    if node.lexeme is not None:
        out["lexeme"] = node.lexeme
    out["children"] = [
        {"ordinal": ordinal, "node": tree_json(t, cid)} for ordinal, cid in t.children.get(nid, ())
    ]
    return out
