"""Tests de los grafos de dependencias."""

from loopw.analytics.dependency_graph import DependencyAnalyzer
from loopw.syntax.parser import parse_program


def test_procedure_order_puts_callees_first(corpus):
    analyzer = DependencyAnalyzer(corpus('mult'))
    assert analyzer.procedure_order() == ['plus', 'main']
    assert not analyzer.is_recursive()


def test_equation_order_ignores_self_loops(corpus):
    analyzer = DependencyAnalyzer(corpus('mult'))
    assert analyzer.equation_order() == ['add', 'mult']
    assert analyzer.mutual_recursion() == []


def test_recursive_procedures_are_detected():
    program = parse_program("""
proc f(in; out) { call g (;); }
proc g(in; out) { call f (;); }
proc main(in; out) { skip; }""")
    analyzer = DependencyAnalyzer(program)
    assert analyzer.is_recursive()
    assert analyzer.procedure_cycles() == [['f', 'g']]


def test_mutual_recursion_between_functions():
    program = parse_program("""
sig even/1;
sig odd/1;
eq even(0) = s(0);
eq even(s(n)) = odd(n);
eq odd(0) = 0;
eq odd(s(n)) = even(n);
proc main(in; out) { skip; }""")
    assert DependencyAnalyzer(program).mutual_recursion() == [['even', 'odd']]


def test_summary(corpus):
    summary = DependencyAnalyzer(corpus('mult')).summary()
    assert summary['procedures'] == 2
    assert summary['functions'] == 2
