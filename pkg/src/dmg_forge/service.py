"""HTTP service hosting grammars, their graphs, and interactive derivation
sessions.

A session wraps one growing decision tree. The service auto-expands
&-nodes between requests, so clients only ever decide OR alternatives and
lexeme values. Every accepted mutation pushes the previous tree snapshot
onto a history stack, which is what undo pops; replaying the same action
sequence on a fresh session reproduces the same tree exactly.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse, RedirectResponse, Response
from pydantic import BaseModel

from . import analysis, graph, tad
from .grammar import (
    Diagnostic,
    GrammarSyntaxError,
    Severity,
    has_errors,
    parse_grammar,
    render_grammar,
    validate,
)
from .reduction import BadInfinityError, reduce_to_dnd

PLACEHOLDER_OPEN = "⟨"
PLACEHOLDER_CLOSE = "⟩"


class GrammarUpload(BaseModel):
    text: str


class SessionCreate(BaseModel):
    grammar_id: str


class ChoiceBody(BaseModel):
    node_id: str
    ordinal: int


class LexemeBody(BaseModel):
    node_id: str
    value: str


@dataclass
class GrammarEntry:
    id: str
    source: str
    dnd_source: str
    dmg: graph.Dmg
    diagnostics: list[Diagnostic]
    stats: dict[str, int]


@dataclass
class SessionEntry:
    id: str
    grammar_id: str
    atad: tad.Atad
    history: list[tad.Atad] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def status(self) -> str:
        return "complete" if self.atad.is_complete() else "in_progress"


class ServiceState:
    def __init__(self, log_dir: str | None = None):
        self.grammars: dict[str, GrammarEntry] = {}
        self.sessions: dict[str, SessionEntry] = {}
        self.log_dir = Path(log_dir) if log_dir else None
        self._lock = threading.Lock()
        self._grammar_seq = 0
        self._session_seq = 0
        if self.log_dir:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def next_grammar_id(self) -> str:
        with self._lock:
            self._grammar_seq += 1
            return f"g{self._grammar_seq}"

    def next_session_id(self) -> str:
        with self._lock:
            self._session_seq += 1
            return f"s{self._session_seq}"

    def log_event(self, session: SessionEntry, event: str, data: dict) -> None:
        if not self.log_dir:
            return
        record = {
            "session_id": session.id,
            "grammar_id": session.grammar_id,
            "event": event,
            "data": data,
        }
        path = self.log_dir / f"{session.id}.jsonl"
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, separators=(",", ":"), ensure_ascii=False) + "\n")


def partial_items(t: tad.Atad) -> list[str]:
    """Decided leaf items in order; undecided subtrees become placeholders."""
    items: list[str] = []
    for leaf in t.leaves():
        if leaf.state is tad.NodeState.LEAF_ZERO:
            items.append(leaf.label)
        elif leaf.state is tad.NodeState.LEXEME_FILLED:
            items.append(leaf.lexeme or "")
        elif leaf.state is tad.NodeState.LEAF_EPSILON:
            continue
        else:
            items.append(f"{PLACEHOLDER_OPEN}{leaf.label}{PLACEHOLDER_CLOSE}")
    return items


def frontier_payload(t: tad.Atad) -> list[dict]:
    out: list[dict] = []
    for nid in t.pending:
        node = t.nodes[nid]
        if node.state is tad.NodeState.PENDING_CHOICE:
            out.append(
                {
                    "node_id": str(nid),
                    "kind": "or",
                    "alternatives": [
                        {"ordinal": e.ordinal, "target_label": t.dmg.node(e.dst).label}
                        for e in t.dmg.out(node.dmg_id)
                    ],
                }
            )
        elif node.state is tad.NodeState.LEXEME_PENDING:
            out.append(
                {
                    "node_id": str(nid),
                    "kind": "lexeme",
                    "allowed": list(t.dmg.lexical_sets.get(node.label, ())),
                }
            )
    return out


def session_payload(entry: SessionEntry) -> dict:
    return {
        "id": entry.id,
        "status": entry.status,
        "atad": tad.tree_json(entry.atad),
        "frontier": frontier_payload(entry.atad),
        "partial_string": " ".join(partial_items(entry.atad)),
    }


def _error(status_code: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": code, "message": message})


def _diagnostics_response(diagnostics: list[Diagnostic]) -> JSONResponse:
    return JSONResponse(
        status_code=422, content={"diagnostics": [d.as_dict() for d in diagnostics]}
    )


def create_app(log_dir: str | None = None, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="dmg-forge", version="0.1.0")
    state = ServiceState(log_dir=log_dir)
    app.state.store = state

    @app.post("/grammars")
    def create_grammar(body: GrammarUpload):
        try:
            g = parse_grammar(body.text)
        except GrammarSyntaxError as exc:
            return _diagnostics_response([Diagnostic(Severity.ERROR, "syntax-error", str(exc))])
        diagnostics = validate(g)
        if has_errors(diagnostics):
            return _diagnostics_response(diagnostics)
        try:
            dnd = reduce_to_dnd(g)
            dmg = graph.build_dmg(dnd)
        except BadInfinityError as exc:
            return _diagnostics_response(
                diagnostics + [Diagnostic(Severity.ERROR, "bad-infinity", str(exc))]
            )
        except graph.AndCycleError as exc:
            return _diagnostics_response(
                diagnostics + [Diagnostic(Severity.ERROR, "and-cycle", str(exc))]
            )
        entry = GrammarEntry(
            id=state.next_grammar_id(),
            source=body.text,
            dnd_source=render_grammar(dnd.grammar),
            dmg=dmg,
            diagnostics=diagnostics,
            stats=analysis.statistics(dmg),
        )
        state.grammars[entry.id] = entry
        return {
            "grammar_id": entry.id,
            "diagnostics": [d.as_dict() for d in entry.diagnostics],
            "statistics": entry.stats,
        }

    @app.get("/grammars/{grammar_id}")
    def get_grammar(grammar_id: str):
        entry = state.grammars.get(grammar_id)
        if entry is None:
            return _error(404, "no_such_grammar", f"unknown grammar {grammar_id!r}")
        return {
            "grammar_id": entry.id,
            "source": entry.source,
            "dnd_source": entry.dnd_source,
            "diagnostics": [d.as_dict() for d in entry.diagnostics],
            "statistics": entry.stats,
        }

    @app.get("/grammars/{grammar_id}/dmg")
    def get_dmg(grammar_id: str):
        entry = state.grammars.get(grammar_id)
        if entry is None:
            return _error(404, "no_such_grammar", f"unknown grammar {grammar_id!r}")
        return Response(content=graph.export_json(entry.dmg), media_type="application/json")

    @app.get("/grammars/{grammar_id}/dot")
    def get_dot(grammar_id: str):
        entry = state.grammars.get(grammar_id)
        if entry is None:
            return _error(404, "no_such_grammar", f"unknown grammar {grammar_id!r}")
        return Response(content=graph.export_dot(entry.dmg), media_type="text/vnd.graphviz")

    @app.get("/grammars/{grammar_id}/analysis")
    def get_analysis(grammar_id: str):
        entry = state.grammars.get(grammar_id)
        if entry is None:
            return _error(404, "no_such_grammar", f"unknown grammar {grammar_id!r}")
        report = analysis.analyze(entry.dmg)
        return Response(content=analysis.report_json(report), media_type="application/json")

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        entry = state.grammars.get(body.grammar_id)
        if entry is None:
            return _error(404, "no_such_grammar", f"unknown grammar {body.grammar_id!r}")
        session = SessionEntry(
            id=state.next_session_id(),
            grammar_id=entry.id,
            atad=tad.auto_expand(tad.new_atad(entry.dmg)),
        )
        state.sessions[session.id] = session
        state.log_event(session, "created", {"grammar_id": entry.id})
        return session_payload(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = state.sessions.get(session_id)
        if session is None:
            return _error(404, "no_such_session", f"unknown session {session_id!r}")
        return session_payload(session)

    def _mutate(session_id: str, action):
        session = state.sessions.get(session_id)
        if session is None:
            return _error(404, "no_such_session", f"unknown session {session_id!r}")
        with session.lock:
            if session.atad.is_complete():
                return _error(409, "session_complete", "session already complete")
            try:
                new_atad = action(session)
            except (tad.NotAFrontierLeafError,) as exc:
                return _error(404, "no_such_frontier_node", str(exc))
            except (
                tad.NotOrNodeError,
                tad.NotAndNodeError,
                tad.NoSuchOrdinalError,
                tad.NotLexicalLeafError,
                tad.LexemeNotAllowedError,
            ) as exc:
                return _error(422, type(exc).__name__.removesuffix("Error"), str(exc))
            session.history.append(session.atad)
            session.atad = new_atad
            return session_payload(session)

    @app.post("/sessions/{session_id}/choices")
    def apply_choice(session_id: str, body: ChoiceBody):
        try:
            node_id = int(body.node_id)
        except ValueError:
            return _error(404, "no_such_frontier_node", f"unknown node {body.node_id!r}")

        def action(session: SessionEntry):
            new = tad.auto_expand(tad.choose(session.atad, node_id, body.ordinal))
            state.log_event(session, "choice", {"node_id": body.node_id, "ordinal": body.ordinal})
            return new

        return _mutate(session_id, action)

    @app.post("/sessions/{session_id}/lexemes")
    def apply_lexeme(session_id: str, body: LexemeBody):
        try:
            node_id = int(body.node_id)
        except ValueError:
            return _error(404, "no_such_frontier_node", f"unknown node {body.node_id!r}")

        def action(session: SessionEntry):
            new = tad.set_lexeme(session.atad, node_id, body.value)
            state.log_event(session, "lexeme", {"node_id": body.node_id, "value": body.value})
            return new

        return _mutate(session_id, action)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = state.sessions.get(session_id)
        if session is None:
            return _error(404, "no_such_session", f"unknown session {session_id!r}")
        with session.lock:
            if not session.history:
                return _error(409, "nothing_to_undo", "session has no history")
            session.atad = session.history.pop()
            state.log_event(session, "undo", {})
            return session_payload(session)

    @app.get("/sessions/{session_id}/result")
    def get_result(session_id: str):
        session = state.sessions.get(session_id)
        if session is None:
            return _error(404, "no_such_session", f"unknown session {session_id!r}")
        if not session.atad.is_complete():
            return {"status": "in_progress", "partial_string": " ".join(partial_items(session.atad))}
        done = tad.finalize(session.atad)
        return {
            "status": "complete",
            "string": tad.crone(done),
            "tad": tad.tree_json(done.atad),
        }

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

        @app.get("/")
        def root():
            return RedirectResponse(url="/ui/")

    else:

        @app.get("/")
        def root():
            return {"service": "dmg-forge", "routes": ["/grammars", "/sessions"]}

    return app
