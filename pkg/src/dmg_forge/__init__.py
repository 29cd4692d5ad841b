"""dmg-forge: decision-making graphs for context-free grammars."""

__version__ = "0.1.0"

from .grammar import (
    Diagnostic,
    Grammar,
    GrammarSyntaxError,
    Rule,
    Severity,
    Symbol,
    SymbolKind,
    parse_grammar,
    render_grammar,
    validate,
)
from .reduction import (
    BadInfinityError,
    DndGrammar,
    RulePartition,
    SymbolType,
    assign_types,
    partition_rules,
    reduce_to_dnd,
)
from .graph import (
    AndCycleError,
    Dmg,
    DmgEdge,
    DmgNode,
    InvariantViolationError,
    build_dmg,
    check_wellformed,
    export_dot,
    export_json,
    import_json,
)
from .language import Chain, LanguageSample, derive_from, language, oracle_enumerate
from .tad import (
    Atad,
    AtadNode,
    IncompleteAtadError,
    NodeState,
    Tad,
    auto_expand,
    choose,
    crone,
    crone_items,
    expand_and,
    finalize,
    new_atad,
    set_lexeme,
    tree_json,
)
from .analysis import (
    AnalysisReport,
    CycleExplosionError,
    CyclePath,
    NoSuchSymbolError,
    NotANonterminalError,
    analyze,
    find_cycles,
    find_inaccessible,
    find_useless,
    statistics,
    sublanguage,
)

__all__ = [name for name in dir() if not name.startswith("_")]
