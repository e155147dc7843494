"""
Tests del núcleo funcional y de la traducción de Loop^ω.
"""

import pytest

from loopw.errors import FuelExceeded, StuckTerm, UntranslatableEquation
from loopw.index.rewriting import EqSystem
from loopw.syntax.ast import App, numeral, numeral_value
from loopw.syntax.parser import parse_program
from loopw.translator.core import (
    CApp, CLam, CNatIter, CPack, CProj, CSucc, CTuple, CVar, CZero,
    PackValue, core_numeral, let, render_core, show_core,
)
from loopw.translator.evaluator import eval_core
from loopw.translator.translate import translate, translate_equations


def outputs(program, inputs):
    core = translate(program)
    return [render_core(v) for v in eval_core(core.entry_application(inputs))]


# ==================== NÚCLEO ====================

def test_zero_is_a_value():
    assert eval_core(CZero()) == 0


def test_natiter_applies_step_n_times():
    assert eval_core(CNatIter(core_numeral(3), CZero(), CLam('x', CSucc(CVar('x'))))) == 3


def test_let_tuple_and_projection():
    term = let('t', CTuple((core_numeral(1), core_numeral(2))), CProj(CVar('t'), 1))
    assert eval_core(term) == 2


def test_pack_values_render_like_records():
    value = eval_core(CPack((core_numeral(2),)))
    assert isinstance(value, PackValue)
    assert render_core(value) == 'pack(2)'
    assert render_core(eval_core(CLam('x', CVar('x')))) == '<fn>'


def test_stuck_terms():
    with pytest.raises(StuckTerm):
        eval_core(CApp(CZero(), CZero()))
    with pytest.raises(StuckTerm):
        eval_core(CVar('libre'))
    with pytest.raises(StuckTerm):
        eval_core(CProj(CZero(), 0))


def test_fuel_is_bounded():
    loop = CLam('x', CApp(CVar('x'), CVar('x')))
    with pytest.raises(FuelExceeded):
        eval_core(CApp(loop, loop), fuel=1000)


def test_deep_terms_do_not_use_the_python_stack():
    assert eval_core(core_numeral(50_000)) == 50_000
    assert show_core(core_numeral(50_000)) == '50000'


def test_show_core_forms():
    term = CApp(CLam('x', CSucc(CVar('x'))), CTuple((CZero(), CPack((core_numeral(2),)))))
    assert show_core(term) == '((lambda (x) (succ x)) (tuple 0 (pack 2)))'


# ==================== FUNCIONES DE E ====================

def test_equations_compile_to_the_rewriting_result(corpus):
    program = corpus('mult')
    core = translate(program)
    eqs = EqSystem.from_program(program)
    for fsym in ('add', 'mult'):
        for a in range(5):
            for b in range(5):
                expected = numeral_value(eqs.normalize(App(fsym, (numeral(a), numeral(b)))))
                assert eval_core(core.function_application(fsym, [a, b])) == expected


def test_non_recursive_equation_compiles_directly():
    program = parse_program("sig d/1; eq d(x) = s(s(x)); proc main(in; out) { skip; }")
    core = translate(program)
    assert eval_core(core.function_application('d', [3])) == 5


@pytest.mark.parametrize('source', [
    "sig f/1; eq f(s(x)) = f(x);",
    "sig h/1; eq h(0) = 0; eq h(s(x)) = h(s(x));",
    "sig f/1; sig g/1; eq f(0) = 0; eq f(s(x)) = g(x); eq g(0) = 0; eq g(s(x)) = f(x);",
])
def test_untranslatable_equations(source):
    program = parse_program(source + " proc main(in; out) { skip; }")
    with pytest.raises(UntranslatableEquation):
        translate_equations(program)


def test_earlier_overlapping_equation_is_untranslatable():
    """f(s(0)) precede a f(s(n)): la reescritura da f(1) = 5 y no se puede compilar."""
    program = parse_program("sig f/1; eq f(s(0)) = 5; eq f(0) = 0; eq f(s(n)) = f(n);"
                            " proc main(in; out) { skip; }")
    eqs = EqSystem.from_program(program)
    assert numeral_value(eqs.normalize(App('f', (numeral(1),)))) == 5
    with pytest.raises(UntranslatableEquation):
        translate_equations(program)


def test_later_overlapping_equation_never_fires():
    """Tras los dos casos elegidos, una ecuación solapada no cambia el resultado."""
    program = parse_program("sig f/1; eq f(0) = 0; eq f(s(n)) = f(n); eq f(s(0)) = 5;"
                            " proc main(in; out) { skip; }")
    core = translate(program)
    eqs = EqSystem.from_program(program)
    for a in range(4):
        expected = numeral_value(eqs.normalize(App('f', (numeral(a),))))
        assert expected == 0
        assert eval_core(core.function_application('f', [a])) == expected


# ==================== PROGRAMAS ====================

def test_double_applied_to_three(corpus):
    core = translate(corpus('double'))
    assert eval_core(core.entry_application([3])) == (6,)


def test_early_exit_returns_jump_payload(corpus):
    assert outputs(corpus('early_exit'), [2]) == ['pack(3)']


def test_higher_order_dispatches_to_current_body(corpus):
    assert outputs(corpus('higher_order'), [4]) == ['5', '6', '<fn>']


def test_escaped_label_reenters_the_block(corpus):
    """En el núcleo la etiqueta es una continuación: saltar tras el bloque vuelve a él."""
    assert outputs(corpus('escape'), []) == ['pack(0)', '<fn>']


def test_entry_arity_is_checked(corpus):
    core = translate(corpus('double'))
    with pytest.raises(ValueError):
        core.entry_application([1, 2])


def test_show_is_stable(corpus):
    program = corpus('double')
    text = translate(program).show()
    lines = text.splitlines()
    assert lines[0].startswith('(define add%fn (lambda (args%1) (proj 1 (natiter (proj 0 args%1) '
                               '(tuple 0 (proj 1 args%1)) (lambda (acc%2) ')
    assert lines[1].startswith('(define main (lambda (a%1) ')
    assert lines[-1] == '(main main)'
    assert translate(program).show() == text
