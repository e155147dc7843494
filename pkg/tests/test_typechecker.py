"""
Tests del comprobador de tipos: for, etiquetas, procedimientos de orden superior.
"""

import pytest

from loopw.checker.typechecker import TypeChecker, check_program
from loopw.config.settings import CORPUS_DIR
from loopw.syntax.ast import App, IVar, Nat, Succ, Zero
from loopw.syntax.parser import parse_program

from conftest import ADD_SIG


def source(name: str) -> str:
    return (CORPUS_DIR / f"{name}.loopw").read_text(encoding='utf-8')


def error_rules(program):
    return [d.rule for d in check_program(program).errors]


@pytest.mark.parametrize('name', [
    'double', 'early_exit', 'higher_order', 'add', 'mult', 'nested_loops', 'records',
    'loop_exit', 'label_param', 'counter', 'swap', 'escape',
])
def test_corpus_program_type_checks(corpus, name):
    report = check_program(corpus(name))
    assert report.errors == []
    assert report.ok()


def test_double_for_rule(corpus):
    """El invariante nat(add(i, i)) cuadra en la entrada, la preservación y la salida."""
    report = check_program(corpus('double'))
    assert report.errors == []
    assert report.obligations == []


def test_mutated_invariant_is_one_entry_mismatch():
    """nat(add(i, s(i))) falla ya en la entrada: add(0, s(0)) = s(0) != 0."""
    mutated = source('double').replace('nat(add(i, i))', 'nat(add(i, s(i)))')
    report = check_program(parse_program(mutated))
    assert len(report.errors) == 1
    error = report.errors[0]
    assert error.rule == 'for-entry'
    assert error.proc == 'main'
    assert error.expected == 'nat(add(0, s(0)))'
    assert error.found == 'nat(0)'


def test_preservation_mismatch():
    program = parse_program(ADD_SIG + """
proc main[n](in a : nat(n); out b : nat(add(n, n))) {
  for y := 0 until a invariant [i] (b : nat(add(i, i))) {
    b := s(b);
  };
}""")
    assert error_rules(program) == ['for-preservation']


def test_early_exit_jump_arity_mismatch():
    mutated = source('early_exit').replace('jump k (pack[s(n)](s(a)));', 'jump k (pack[s(n)](s(a)), 0);')
    assert mutated != source('early_exit')
    assert error_rules(parse_program(mutated)) == ['jump-arity']


def test_jump_payload_type_mismatch():
    mutated = source('early_exit').replace('jump k (pack[s(n)](s(a)));', 'jump k (0);')
    assert error_rules(parse_program(mutated)) == ['jump']


def test_dead_code_after_jump_is_not_checked():
    """Lo que sigue a un salto es inalcanzable: ni siquiera un tipo erróneo cuenta."""
    program = parse_program("""
proc main(in; out r : nat(0)) {
  label k out (r : nat(0)) {
    jump k (0);
    r := s(0);
  };
}""")
    assert error_rules(program) == []


def test_higher_order_reassignment(corpus):
    """f cambia de tipo al reasignarse; cada llamada usa el tipo vigente."""
    checker = TypeChecker(corpus('higher_order'))
    report = checker.check_program()
    assert report.errors == []
    body = corpus('higher_order').procs[0].lit.body
    before_second_call = checker.static_omega[body[3].span]
    n = IVar('n')
    assert before_second_call['r'] == Nat(Succ(n))
    assert before_second_call['f'].outs == (Nat(Succ(Succ(IVar('m')))),)


def test_frame_property_outside_footprint():
    """Un for solo cambia las variables de su huella."""
    program = parse_program(ADD_SIG + """
proc main[n](in a : nat(n); out b : nat(add(n, n)), c : nat(s(0))) {
  c := 1;
  for y := 0 until a invariant [i] (b : nat(add(i, i))) {
    b := s(s(b));
  };
  skip;
}""")
    checker = TypeChecker(program)
    assert checker.check_program().errors == []
    body = program.procs[0].lit.body
    before, after = checker.static_omega[body[1].span], checker.static_omega[body[2].span]
    n = IVar('n')
    assert before['c'] == after['c'] == Nat(Succ(Zero()))
    assert after['b'] == Nat(App('add', (n, n)))


def test_write_outside_footprint():
    program = parse_program("""
proc main(in; out b : nat(0), c : nat(0)) {
  label k out (b : nat(0)) {
    c := 0;
  };
}""")
    assert error_rules(program) == ['footprint']


def test_read_before_assign():
    program = parse_program("""
proc main(in; out r : exists[m](nat(m)), q : exists[m](nat(m))) {
  q := r;
  r := q;
}""")
    assert error_rules(program) == ['definite-assignment']


def test_recursive_procedure_is_rejected():
    program = parse_program("proc p(in; out) { call p (;); } proc main(in; out) { skip; }")
    assert 'no-recursion' in error_rules(program)


def test_records_unpack_brings_index_equation(corpus):
    """El componente m = s(n) del registro se asume tras el unpack."""
    report = check_program(corpus('records'))
    assert report.errors == []


def test_pack_with_false_equality_is_rejected():
    program = parse_program("""
proc main[n](in a : nat(n); out r : exists[m](nat(m), m = s(n))) {
  r := pack[n](a);
}""")
    assert error_rules(program) == ['type-mismatch']


def test_errors_do_not_stop_other_procedures():
    """Un error aborta su procedimiento; los demás se siguen comprobando."""
    program = parse_program("""
proc bad(in; out b : nat(0)) { b := s(0); }
proc main(in; out c : nat(s(0))) { c := 0; }""")
    report = check_program(program)
    assert sorted(d.proc for d in report.errors) == ['bad', 'main']
