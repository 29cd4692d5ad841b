"""Context-free grammar parsing, validation, and rendering.

Grammar files are plain UTF-8 text:

    S -> "a" S "c" | B ;
    B -> "b" B "c" | ;          # an empty alternative derives the empty chain
    %lexical Id = "x", "y" ;    # lexeme set for a nonterminal with no rules
    %start S ;                  # optional; defaults to the first rule's lhs

Nonterminals are bare identifiers, terminals are double-quoted strings,
``#`` starts a comment. A nonterminal that never appears on a left-hand
side is *lexical*: it stands for a finite set of lexemes declared with
``%lexical``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class SymbolKind(enum.Enum):
    TERMINAL = "terminal"
    NONTERMINAL = "nonterminal"


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: SymbolKind

    @property
    def is_terminal(self) -> bool:
        return self.kind is SymbolKind.TERMINAL


@dataclass(frozen=True)
class Rule:
    """One production: ``lhs -> rhs``. An empty ``rhs`` derives the empty chain."""

    lhs: str
    rhs: tuple[str, ...]

    @property
    def is_identity(self) -> bool:
        return len(self.rhs) == 1 and self.rhs[0] == self.lhs


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    subject: str | None = None

    def as_dict(self) -> dict:
        out: dict = {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
        }
        if self.subject is not None:
            out["subject"] = self.subject
        return out


class GrammarSyntaxError(Exception):
    """Malformed grammar text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Grammar:
    """An immutable grammar: symbol table, ordered rules, start symbol.

    ``symbols`` preserves first-appearance order (rule walk, then directives),
    which downstream code relies on for deterministic output. ``parse_warnings``
    records parse-time repairs (duplicate alternatives); :func:`validate`
    surfaces them.
    """

    symbols: dict[str, Symbol]
    rules: tuple[Rule, ...]
    start: str
    lexical_sets: dict[str, tuple[str, ...]]
    parse_warnings: tuple[Diagnostic, ...] = field(default=(), compare=False)

    def rules_for(self, name: str) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.lhs == name)

    def rule_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for rule in self.rules:
            counts[rule.lhs] = counts.get(rule.lhs, 0) + 1
        return counts

    def terminals(self) -> list[str]:
        return [s.name for s in self.symbols.values() if s.is_terminal]

    def nonterminals(self) -> list[str]:
        return [s.name for s in self.symbols.values() if not s.is_terminal]

    def lexical_nonterminals(self) -> list[str]:
        """Nonterminals with no rules, in symbol-table order."""
        counts = self.rule_counts()
        return [n for n in self.nonterminals() if counts.get(n, 0) == 0]


# --- tokenizer ---------------------------------------------------------------

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT STRING ARROW PIPE SEMI EQ COMMA DIRECTIVE EOF
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise GrammarSyntaxError("unterminated terminal string", start_line, start_col)
            value = text[i + 1 : j]
            if value == "":
                raise GrammarSyntaxError("empty terminal string", start_line, start_col)
            tokens.append(_Token("STRING", value, start_line, start_col))
            col += j - i + 1
            i = j + 1
            continue
        if ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(_Token("IDENT", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if text.startswith("->", i):
            tokens.append(_Token("ARROW", "->", start_line, start_col))
            i += 2
            col += 2
            continue
        if ch == "%":
            j = i + 1
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            word = text[i:j]
            if word not in ("%start", "%lexical"):
                raise GrammarSyntaxError(f"unknown directive {word!r}", start_line, start_col)
            tokens.append(_Token("DIRECTIVE", word, start_line, start_col))
            col += j - i
            i = j
            continue
        simple = {"|": "PIPE", ";": "SEMI", "=": "EQ", ",": "COMMA"}.get(ch)
        if simple:
            tokens.append(_Token(simple, ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise GrammarSyntaxError(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


# --- parser ------------------------------------------------------------------


@dataclass
class _RawItem:
    text: str
    is_terminal: bool
    line: int
    column: int


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise GrammarSyntaxError(
                f"expected {what}, found {tok.text or 'end of input'!r}", tok.line, tok.column
            )
        return tok


def parse_grammar(text: str) -> Grammar:
    """Parse grammar source text into a :class:`Grammar`.

    Alternatives of one source line become separate rules in left-to-right
    order; the start symbol is the first rule's lhs unless ``%start`` says
    otherwise. Duplicate identical alternatives under one lhs are dropped
    (surfaced later as warnings by :func:`validate`). Raises
    :class:`GrammarSyntaxError` on malformed input.
    """
    p = _Parser(_tokenize(text))
    raw_rules: list[tuple[_RawItem, list[list[_RawItem]]]] = []
    start_directive: _Token | None = None
    start_name: str | None = None
    lexical_directives: list[tuple[_Token, str, list[str]]] = []

    while p.peek().kind != "EOF":
        tok = p.peek()
        if tok.kind == "DIRECTIVE":
            p.next()
            if tok.text == "%start":
                name = p.expect("IDENT", "a nonterminal name after %start")
                p.expect("SEMI", "';'")
                if start_directive is not None:
                    raise GrammarSyntaxError("duplicate %start directive", tok.line, tok.column)
                start_directive = tok
                start_name = name.text
            else:  # %lexical
                name = p.expect("IDENT", "a nonterminal name after %lexical")
                p.expect("EQ", "'='")
                lexemes = [p.expect("STRING", "a quoted lexeme").text]
                while p.peek().kind == "COMMA":
                    p.next()
                    lexemes.append(p.expect("STRING", "a quoted lexeme").text)
                p.expect("SEMI", "';'")
                lexical_directives.append((name, name.text, lexemes))
            continue
        if tok.kind == "IDENT":
            lhs_tok = p.next()
            lhs = _RawItem(lhs_tok.text, False, lhs_tok.line, lhs_tok.column)
            p.expect("ARROW", "'->'")
            alts: list[list[_RawItem]] = [[]]
            while True:
                nxt = p.peek()
                if nxt.kind in ("IDENT", "STRING"):
                    p.next()
                    alts[-1].append(
                        _RawItem(nxt.text, nxt.kind == "STRING", nxt.line, nxt.column)
                    )
                elif nxt.kind == "PIPE":
                    p.next()
                    alts.append([])
                elif nxt.kind == "SEMI":
                    p.next()
                    break
                else:
                    raise GrammarSyntaxError(
                        f"expected a symbol, '|' or ';', found {nxt.text or 'end of input'!r}",
                        nxt.line,
                        nxt.column,
                    )
            raw_rules.append((lhs, alts))
            continue
        raise GrammarSyntaxError(
            f"expected a rule or directive, found {tok.text!r}", tok.line, tok.column
        )

    # Assemble the symbol table in rule-walk order; reject names used both
    # quoted and bare.
    symbols: dict[str, Symbol] = {}

    def register(item: _RawItem) -> None:
        kind = SymbolKind.TERMINAL if item.is_terminal else SymbolKind.NONTERMINAL
        seen = symbols.get(item.text)
        if seen is None:
            symbols[item.text] = Symbol(item.text, kind)
        elif seen.kind is not kind:
            raise GrammarSyntaxError(
                f"symbol {item.text!r} used both as a terminal and a nonterminal",
                item.line,
                item.column,
            )

    warnings: list[Diagnostic] = []
    rules: list[Rule] = []
    seen_alts: dict[str, set[tuple[str, ...]]] = {}
    for lhs, alts in raw_rules:
        register(lhs)
        for alt in alts:
            for item in alt:
                register(item)
            rhs = tuple(item.text for item in alt)
            if rhs in seen_alts.setdefault(lhs.text, set()):
                warnings.append(
                    Diagnostic(
                        Severity.WARNING,
                        "duplicate-alternative",
                        f"duplicate alternative for {lhs.text!r} dropped",
                        lhs.text,
                    )
                )
                continue
            seen_alts[lhs.text].add(rhs)
            rules.append(Rule(lhs.text, rhs))

    lexical_sets: dict[str, tuple[str, ...]] = {}
    rule_lhs = {r.lhs for r in rules}
    for name_tok, name, lexemes in lexical_directives:
        if name in lexical_sets:
            raise GrammarSyntaxError(
                f"duplicate %lexical directive for {name!r}", name_tok.line, name_tok.column
            )
        seen = symbols.get(name)
        if seen is not None and seen.is_terminal:
            raise GrammarSyntaxError(
                f"%lexical names the terminal {name!r}", name_tok.line, name_tok.column
            )
        if name in rule_lhs:
            raise GrammarSyntaxError(
                f"%lexical names {name!r}, which has rules and is not lexical",
                name_tok.line,
                name_tok.column,
            )
        if seen is None:
            symbols[name] = Symbol(name, SymbolKind.NONTERMINAL)
        unique: list[str] = []
        for lex in lexemes:
            if lex in unique:
                warnings.append(
                    Diagnostic(
                        Severity.WARNING,
                        "duplicate-lexeme",
                        f"duplicate lexeme {lex!r} for {name!r} dropped",
                        name,
                    )
                )
            else:
                unique.append(lex)
        lexical_sets[name] = tuple(unique)

    if start_name is not None:
        sym = symbols.get(start_name)
        if sym is None:
            assert start_directive is not None
            raise GrammarSyntaxError(
                f"%start names unknown symbol {start_name!r}",
                start_directive.line,
                start_directive.column,
            )
        if sym.is_terminal:
            assert start_directive is not None
            raise GrammarSyntaxError(
                f"%start names the terminal {start_name!r}",
                start_directive.line,
                start_directive.column,
            )
        start = start_name
    elif rules:
        start = rules[0].lhs
    else:
        raise GrammarSyntaxError("grammar has no rules and no %start directive", 1, 1)

    return Grammar(
        symbols=symbols,
        rules=tuple(rules),
        start=start,
        lexical_sets=lexical_sets,
        parse_warnings=tuple(warnings),
    )


def make_grammar(
    rules: tuple[Rule, ...],
    start: str,
    terminals: set[str],
    lexical_sets: dict[str, tuple[str, ...]],
) -> Grammar:
    """Build a Grammar from parts, deriving the symbol table in rule-walk order."""
    symbols: dict[str, Symbol] = {}
    for rule in rules:
        if rule.lhs not in symbols:
            symbols[rule.lhs] = Symbol(rule.lhs, SymbolKind.NONTERMINAL)
        for name in rule.rhs:
            if name not in symbols:
                kind = SymbolKind.TERMINAL if name in terminals else SymbolKind.NONTERMINAL
                symbols[name] = Symbol(name, kind)
    for name in lexical_sets:
        if name not in symbols:
            symbols[name] = Symbol(name, SymbolKind.NONTERMINAL)
    if start not in symbols:
        symbols[start] = Symbol(start, SymbolKind.NONTERMINAL)
    return Grammar(symbols=symbols, rules=rules, start=start, lexical_sets=lexical_sets)


def validate(g: Grammar) -> list[Diagnostic]:
    """Check grammar preconditions; an empty result means no findings.

    ERROR for identity rules ``A -> A``; INFO for each lexical nonterminal;
    WARNING when a lexical nonterminal has no usable lexeme set (such a
    symbol can never be finalized in a derivation). Parse-time warnings
    (duplicate alternatives) are included.
    """
    out: list[Diagnostic] = list(g.parse_warnings)
    for rule in g.rules:
        if rule.is_identity:
            out.append(
                Diagnostic(
                    Severity.ERROR,
                    "identity-rule",
                    f"identity rule {rule.lhs} -> {rule.lhs} is useless",
                    rule.lhs,
                )
            )
    for name in g.lexical_nonterminals():
        out.append(
            Diagnostic(
                Severity.INFO,
                "lexical-nonterminal",
                f"{name!r} has no rules; treated as lexical",
                name,
            )
        )
        if not g.lexical_sets.get(name):
            out.append(
                Diagnostic(
                    Severity.WARNING,
                    "empty-lexical-set",
                    f"lexical nonterminal {name!r} has no lexemes; it can never be resolved",
                    name,
                )
            )
    return out


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def render_item(g: Grammar, name: str) -> str:
    if g.symbols[name].is_terminal:
        return f'"{name}"'
    return name


def render_grammar(g: Grammar) -> str:
    """Render a grammar back to source text.

    Consecutive rules sharing a lhs merge into one ``|``-separated line, so
    rule order (and therefore alternative order) survives a reparse.
    """
    lines: list[str] = []
    if not g.rules or g.start != g.rules[0].lhs:
        lines.append(f"%start {g.start} ;")
    i = 0
    while i < len(g.rules):
        lhs = g.rules[i].lhs
        parts: list[str] = [lhs, "->"]
        first = True
        while i < len(g.rules) and g.rules[i].lhs == lhs:
            if not first:
                parts.append("|")
            parts.extend(render_item(g, name) for name in g.rules[i].rhs)
            first = False
            i += 1
        parts.append(";")
        lines.append(" ".join(parts))
    for name, lexemes in g.lexical_sets.items():
        quoted = ", ".join(f'"{lex}"' for lex in lexemes)
        lines.append(f"%lexical {name} = {quoted} ;")
    return "\n".join(lines) + "\n"
