from __future__ import annotations

from pathlib import Path

import pytest

from dmg_forge import build_dmg, parse_grammar, reduce_to_dnd

REPO_ROOT = Path(__file__).resolve().parent.parent
GRAMMARS = REPO_ROOT / "grammars"

EXAMPLE1 = (GRAMMARS / "example1.g").read_text()
EXAMPLE2 = (GRAMMARS / "example2.g").read_text()
LEXICAL_DEMO = (GRAMMARS / "lexical_demo.g").read_text()


@pytest.fixture(scope="session")
def ex1_grammar():
    return parse_grammar(EXAMPLE1)


@pytest.fixture(scope="session")
def ex1_dnd(ex1_grammar):
    return reduce_to_dnd(ex1_grammar)


@pytest.fixture(scope="session")
def ex1_dmg(ex1_dnd):
    return build_dmg(ex1_dnd)


@pytest.fixture(scope="session")
def ex2_grammar():
    return parse_grammar(EXAMPLE2)


@pytest.fixture(scope="session")
def ex2_dnd(ex2_grammar):
    return reduce_to_dnd(ex2_grammar)


@pytest.fixture(scope="session")
def ex2_dmg(ex2_dnd):
    return build_dmg(ex2_dnd)


@pytest.fixture(scope="session")
def lex_grammar():
    return parse_grammar(LEXICAL_DEMO)


@pytest.fixture(scope="session")
def lex_dmg(lex_grammar):
    return build_dmg(reduce_to_dnd(lex_grammar))
