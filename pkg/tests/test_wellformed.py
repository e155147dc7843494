"""
Tests de buena formación: ámbito, huellas y estratificación de la pureza.
"""

from dataclasses import replace

import pytest

from loopw.checker.diagnostics import has_errors
from loopw.checker.typechecker import check_program
from loopw.syntax.ast import Assign, Jump, LabelRef, Pack, Zero, ZeroExpr
from loopw.syntax.parser import parse_program
from loopw.syntax.wellformed import well_formed
from loopw.config.settings import CORPUS_DIR


def rules(program):
    return {d.rule for d in well_formed(program)}


def test_double_is_well_formed(corpus):
    assert well_formed(corpus('double')) == []


@pytest.mark.parametrize('path', sorted(CORPUS_DIR.glob('*.loopw')), ids=lambda p: p.stem)
def test_corpus_is_well_formed(path):
    program = parse_program(path.read_text(encoding='utf-8'))
    assert not has_errors(well_formed(program))


def test_jump_inside_pack_is_impure(corpus):
    """Un Jump construido a mano dentro de un pack se rechaza antes de tipar."""
    program = corpus('early_exit')
    decl = program.procs[0]
    block = decl.lit.body[0]
    jump = Jump(LabelRef('k'), (Pack((Zero(),), (ZeroExpr(),)),))
    bad = Assign('r', Pack((Zero(),), (jump,)))
    lit = replace(decl.lit, body=(replace(block, body=(bad,)),))
    program = replace(program, procs=(replace(decl, lit=lit),))
    diagnostics = well_formed(program)
    assert 'purity' in {d.rule for d in diagnostics}
    assert has_errors(diagnostics)


def test_unbound_index_in_nat_type():
    program = parse_program("proc main(in a : nat(q); out) { skip; }")
    assert 'unbound' in rules(program)


def test_unbound_value_name():
    program = parse_program("proc main(in; out b : nat(0)) { b := c; }")
    assert 'unbound' in rules(program)


def test_assignment_to_immutable():
    program = parse_program("proc main[n](in a : nat(n); out) { a := 0; }")
    assert 'unbound' in rules(program)


def test_repeated_footprint_name():
    source = ("proc main(in; out b : nat(0)) {\n"
              "  label k out (b : nat(0), b : nat(0)) { skip; };\n"
              "}")
    assert 'footprint' in rules(parse_program(source))


def test_footprint_must_name_mutables():
    source = ("proc main[n](in a : nat(n); out) {\n"
              "  for y := 0 until a invariant [i] (a : nat(n)) { skip; };\n"
              "}")
    assert 'footprint' in rules(parse_program(source))


def test_index_binder_shadowing():
    source = ("proc main[n](in a : nat(n); out b : nat(0)) {\n"
              "  for y := 0 until a invariant [n] (b : nat(0)) { skip; };\n"
              "}")
    assert 'shadowing' in rules(parse_program(source))


def test_equality_type_outside_record():
    program = parse_program("proc main[n](in a : n = n; out) { skip; }")
    assert 'eq-position' in rules(program)


def test_equation_rhs_variables():
    source = "sig f/1; eq f(x) = y; proc main(in; out) { skip; }"
    assert 'equation' in rules(parse_program(source))


def test_equation_lhs_must_be_constructor_pattern():
    source = "sig f/1; sig g/1; eq f(g(x)) = x; proc main(in; out) { skip; }"
    assert 'equation' in rules(parse_program(source))


def test_duplicate_procedure():
    source = "proc main(in; out) { skip; } proc main(in; out) { skip; }"
    assert 'duplicate' in rules(parse_program(source))


def test_proc_literal_mutable_capture_left_to_checker():
    """Escribir una mutable exterior desde un literal no es un error de ámbito sino de huella."""
    source = ("proc main(in; out b : nat(0), f : proc(in; out)) {\n"
              "  f := proc(in; out) { b := 0; };\n"
              "}")
    program = parse_program(source)
    assert not has_errors(well_formed(program))
    report = check_program(program)
    assert [d.rule for d in report.errors] == ['footprint']
