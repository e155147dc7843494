"""Fixtures compartidas por la batería de tests."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from loopw.config.settings import CORPUS_DIR
from loopw.index.rewriting import EqSystem
from loopw.syntax.parser import parse_program

ADD_SIG = """
sig add/2;
eq add(0, m) = m;
eq add(s(n), m) = s(add(n, m));
eq add(n, s(m)) = s(add(n, m));
"""


def load(name: str):
    """Parsea un programa del corpus por nombre (sin extensión)."""
    return parse_program((CORPUS_DIR / f"{name}.loopw").read_text(encoding='utf-8'))


@pytest.fixture
def corpus():
    return load


@pytest.fixture
def add_eqs() -> EqSystem:
    program = parse_program(ADD_SIG + "proc main(in; out) { skip; }")
    return EqSystem.from_program(program)
