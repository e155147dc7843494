"""
Tests del intérprete directo: resultados, trazas y saltos.
"""

import pytest

from loopw.errors import EscapedLabel, FuelExceeded
from loopw.runtime.interpreter import Interpreter, run, trace
from loopw.runtime.values import Packed, render
from loopw.syntax.ast import For
from loopw.syntax.parser import parse_program, parse_term


def rendered(program, inputs):
    return [render(v) for v in run(program, inputs)]


def test_double_three_is_six(corpus):
    assert run(corpus('double'), [3]) == [6]


def test_double_zero_iterations(corpus):
    assert run(corpus('double'), [0]) == [0]


@pytest.mark.parametrize('a', [0, 1, 4])
def test_early_exit_returns_payload_not_fall_through(corpus, a):
    result = run(corpus('early_exit'), [a])
    assert result == [Packed((a + 1,))]
    assert rendered(corpus('early_exit'), [a]) == [f"pack({a + 1})"]


def test_higher_order_dispatches_to_new_body(corpus):
    """La segunda llamada a f usa el literal reasignado (+2)."""
    assert rendered(corpus('higher_order'), [4]) == ['5', '6', '<fn>']


@pytest.mark.parametrize('name,inputs,expected', [
    ('add', [2, 3], ['5']),
    ('mult', [3, 4], ['12']),
    ('nested_loops', [2, 5], ['10']),
    ('records', [2], ['pack(3)', '3']),
    ('loop_exit', [0], ['pack(0)']),
    ('loop_exit', [3], ['pack(1)']),
    ('label_param', [2], ['pack(3)']),
    ('counter', [2, 3], ['5', '<fn>']),
    ('swap', [1, 7], ['7', '1']),
])
def test_corpus_results(corpus, name, inputs, expected):
    assert rendered(corpus(name), inputs) == expected


def test_trace_of_double_shows_loop_heads(corpus):
    program = corpus('double')
    loop = program.procs[0].lit.body[0]
    assert isinstance(loop, For)
    snapshots = trace(program, [2])
    heads = [s for s in snapshots if s.span == loop.span]
    assert [s.store['b'] for s in heads] == [0, 2, 4]
    assert [s.valuation['i'] for s in heads] == [0, 1, 2]
    assert all(s.valuation['n'] == 2 for s in heads)


def test_trace_of_skip_program_is_initial_store():
    program = parse_program("proc main[n](in a : nat(n); out b : nat(0)) { skip; }")
    snapshots = trace(program, [5])
    assert len(snapshots) == 1
    assert snapshots[0].store == {'b': 0}
    assert snapshots[0].rendered() == {'b': '0'}


def test_trace_is_deterministic(corpus):
    program = corpus('mult')
    first = [(s.span, s.rendered()) for s in trace(program, [2, 2])]
    second = [(s.span, s.rendered()) for s in trace(program, [2, 2])]
    assert first == second


def test_escaped_label(corpus):
    """Saltar a una etiqueta cuyo bloque ya terminó es un error de ejecución."""
    with pytest.raises(EscapedLabel):
        run(corpus('escape'), [])


def test_fuel_limit(corpus):
    with pytest.raises(FuelExceeded):
        run(corpus('double'), [50], fuel=10)


def test_input_arity_is_checked(corpus):
    with pytest.raises(ValueError):
        run(corpus('double'), [1, 2])


def test_entry_with_non_nat_inputs_is_rejected():
    program = parse_program("proc main(in f : proc(in; out); out) { skip; }")
    with pytest.raises(ValueError):
        Interpreter(program).run([0])


def test_index_value_of_open_term(corpus):
    interpreter = Interpreter(corpus('double'))
    term = parse_term("add(n, n)", {'add': 2})
    assert interpreter.index_value(term, {'n': 3}) == 6
    assert interpreter.index_value(term, {}) is None
