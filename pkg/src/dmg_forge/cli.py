"""Command-line entry point.

Subcommands: ``parse``, ``dnd``, ``build``, ``enumerate``, ``derive``,
``analyze``, ``serve``. Outputs default to stdout; machine-readable modes
(JSON, DOT) are byte-stable for identical inputs. Exit codes: 0 success,
1 errors (bad grammar, missing file), 2 usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__, analysis, graph, tad
from .grammar import Grammar, GrammarSyntaxError, Severity, parse_grammar, render_grammar, validate
from .language import derive_from, language, oracle_enumerate
from .reduction import BadInfinityError, DndGrammar, reduce_to_dnd


class CliError(Exception):
    pass


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc


def _load_grammar(path: str) -> Grammar:
    try:
        return parse_grammar(_read_file(path))
    except GrammarSyntaxError as exc:
        raise CliError(f"{path}:{exc}") from exc


def _check_validated(g: Grammar, *, quiet: bool = False) -> None:
    diagnostics = validate(g)
    had_error = False
    for d in diagnostics:
        if d.severity is Severity.ERROR:
            had_error = True
        if not quiet or d.severity is Severity.ERROR:
            print(f"{d.severity.value.upper()}: {d.message}", file=sys.stderr)
    if had_error:
        raise CliError("grammar has errors")


def _pipeline(path: str, *, quiet: bool = True) -> tuple[Grammar, DndGrammar, graph.Dmg]:
    g = _load_grammar(path)
    _check_validated(g, quiet=quiet)
    try:
        dnd = reduce_to_dnd(g)
        dmg = graph.build_dmg(dnd)
    except (BadInfinityError, graph.AndCycleError, graph.InvariantViolationError) as exc:
        raise CliError(str(exc)) from exc
    return g, dnd, dmg


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_parse(args) -> int:
    g = _load_grammar(args.file)
    _check_validated(g, quiet=False)
    _write_output(render_grammar(g), args.output)
    return 0


def _cmd_dnd(args) -> int:
    g = _load_grammar(args.file)
    _check_validated(g)
    try:
        dnd = reduce_to_dnd(g)
    except BadInfinityError as exc:
        raise CliError(str(exc)) from exc
    _write_output(render_grammar(dnd.grammar), args.output)
    return 0


def _cmd_build(args) -> int:
    _, _, dmg = _pipeline(args.file)
    wrote = False
    if args.dot is not None:
        _write_output(graph.export_dot(dmg), args.dot)
        wrote = wrote or args.dot != "-"
    if args.json is not None:
        _write_output(graph.export_json(dmg) + "\n", args.json)
        wrote = wrote or args.json != "-"
    if args.dot is None and args.json is None:
        _write_output(graph.export_json(dmg) + "\n", None)
    return 0


def _render_chain(chain: tuple[str, ...]) -> str:
    return " ".join(chain) if chain else "<eps>"


def _cmd_enumerate(args) -> int:
    g, _, dmg = _pipeline(args.file)
    if args.oracle:
        if args.node is not None:
            raise CliError("--node and --oracle cannot be combined")
        sample = oracle_enumerate(g, args.max_len)
    elif args.node is not None:
        node = dmg.by_label(args.node)
        if node is None:
            raise CliError(f"no symbol {args.node!r} in the graph")
        sample = derive_from(dmg, node.id, args.max_len)
    else:
        sample = language(dmg, args.max_len)
    lines = [_render_chain(c) for c in sorted(sample.chains, key=lambda c: (len(c), c))]
    _write_output("\n".join(lines) + ("\n" if lines else ""), args.output)
    return 0


def _parse_lexeme_args(spec: str | None) -> dict[str, list[str]]:
    queues: dict[str, list[str]] = {}
    if not spec:
        return queues
    for part in spec.split(","):
        name, sep, value = part.partition("=")
        if not sep or not name:
            raise CliError(f"bad --lexemes entry {part!r}; want name=value")
        queues.setdefault(name, []).append(value)
    return queues


def _cmd_derive(args) -> int:
    _, _, dmg = _pipeline(args.file)
    try:
        ordinals = [int(x) for x in args.choices.split(",")] if args.choices else []
    except ValueError:
        raise CliError(f"bad --choices value {args.choices!r}; want comma-separated integers")
    lexeme_queues = _parse_lexeme_args(args.lexemes)

    t = tad.auto_expand(tad.new_atad(dmg))
    try:
        for ordinal in ordinals:
            leaf = next(
                (nid for nid in t.pending if t.nodes[nid].state is tad.NodeState.PENDING_CHOICE),
                None,
            )
            if leaf is None:
                raise CliError("more choices given than pending alternatives")
            t = tad.auto_expand(tad.choose(t, leaf, ordinal))
        for nid in list(t.pending):
            node = t.nodes[nid]
            if node.state is not tad.NodeState.LEXEME_PENDING:
                continue
            queue = lexeme_queues.get(node.label)
            if not queue:
                continue
            value = queue.pop(0) if len(queue) > 1 else queue[0]
            t = tad.set_lexeme(t, nid, value)
    except tad.TadError as exc:
        raise CliError(str(exc)) from exc

    if t.is_complete():
        text = tad.crone(tad.finalize(t))
        print(text if text else "<eps>")
        return 0
    for nid in t.pending:
        node = t.nodes[nid]
        if node.state is tad.NodeState.PENDING_CHOICE:
            alts = " | ".join(
                f"{e.ordinal} -> {dmg.node(e.dst).label}" for e in dmg.out(node.dmg_id)
            )
            print(f"pending #{nid} {node.label}: {alts}")
        elif node.state is tad.NodeState.LEXEME_PENDING:
            allowed = ", ".join(dmg.lexical_sets.get(node.label, ()))
            print(f"pending #{nid} {node.label}: lexeme in {{{allowed}}}")
    return 0


def _cmd_analyze(args) -> int:
    _, _, dmg = _pipeline(args.file)
    try:
        report = analysis.analyze(dmg)
    except analysis.CycleExplosionError as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        _write_output(analysis.report_json(report) + "\n", args.output)
    else:
        _write_output(report.render_text(), args.output)
    return 0


def _default_ui_dir() -> str | None:
    candidate = os.path.join(os.getcwd(), "frontend", "dist")
    return candidate if os.path.isdir(candidate) else None


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    listen = args.listen or os.environ.get("DMG_FORGE_LISTEN") or "127.0.0.1:8000"
    host, sep, port_text = listen.rpartition(":")
    if not sep or not host:
        raise CliError(f"bad listen address {listen!r}; want host:port")
    try:
        port = int(port_text)
    except ValueError:
        raise CliError(f"bad port in listen address {listen!r}")
    app = create_app(log_dir=args.log_dir, ui_dir=args.ui_dir or _default_ui_dir())
    uvicorn.run(app, host=host, port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmg-forge",
        description="Turn context-free grammars into decision-making graphs and derive strings on them.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and validate a grammar, print it back")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("dnd", help="print the grammar in reduced (one-to-one) form")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_dnd)

    p = sub.add_parser("build", help="build the graph; print or write JSON/DOT")
    p.add_argument("file")
    p.add_argument("--dot", default=None, metavar="PATH", help="write DOT ('-' for stdout)")
    p.add_argument("--json", default=None, metavar="PATH", help="write JSON ('-' for stdout)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("enumerate", help="list derivable chains up to a length bound")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True, metavar="N")
    p.add_argument("--node", default=None, metavar="LABEL", help="derive from this node instead of start")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="enumerate from the original rules instead of the graph (differential testing)",
    )
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("derive", help="drive a derivation by a scripted choice sequence")
    p.add_argument("file")
    p.add_argument("--choices", default="", metavar="N,N,...", help="alternatives for pending !-leaves, leftmost first")
    p.add_argument("--lexemes", default=None, metavar="name=value,...", help="values for lexical leaves")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("analyze", help="report inaccessible/useless symbols, cycles, statistics")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--listen", default=None, metavar="HOST:PORT", help="default $DMG_FORGE_LISTEN or 127.0.0.1:8000")
    p.add_argument("--log-dir", default=None, help="append per-session action logs here")
    p.add_argument("--ui-dir", default=None, help="static UI assets (default: ./frontend/dist if present)")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"dmg-forge: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
