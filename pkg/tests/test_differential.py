"""
Comparación diferencial intérprete/núcleo y solidez de los índices nat en la traza.
"""

import pytest

from loopw.analytics.differential import (
    Divergence, compare_semantics, input_space, nat_index_violations, run_both,
)
from loopw.checker.typechecker import TypeChecker
from loopw.syntax.ast import Nat, Zero
from loopw.translator.translate import translate

UPWARD_CORPUS = [
    'double', 'early_exit', 'higher_order', 'add', 'mult', 'nested_loops', 'records',
    'loop_exit', 'label_param', 'counter', 'swap', 'consequence', 'bad_claim',
]


def test_input_space_is_the_cartesian_product():
    assert list(input_space(2, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert list(input_space(0, 5)) == [()]


@pytest.mark.parametrize('name', UPWARD_CORPUS)
def test_interpreter_and_core_agree(corpus, name):
    """Todas las entradas con componentes en 0..5 dan la misma salida impresa."""
    assert compare_semantics(corpus(name), max_input=5) is None


def test_escape_is_the_documented_divergence(corpus):
    """El intérprete no reanuda bloques terminados; el núcleo sí."""
    divergence = compare_semantics(corpus('escape'), max_input=5)
    assert isinstance(divergence, Divergence)
    assert divergence.inputs == ()
    assert divergence.interpreter == ('EscapedLabel',)
    assert divergence.core == ('pack(0)', '<fn>')


def test_run_both_reports_outputs(corpus):
    program = corpus('double')
    direct, translated = run_both(program, translate(program), (3,))
    assert direct == translated == ('6',)


@pytest.mark.parametrize('name', [n for n in UPWARD_CORPUS if n not in ('consequence', 'bad_claim')])
def test_nat_indices_hold_on_traces(corpus, name):
    """Cada variable con tipo estático nat(t) cerrado vale normalize(t) en la traza."""
    program = corpus(name)
    checker = TypeChecker(program)
    assert checker.check_program().errors == []
    assert nat_index_violations(program, checker.static_omega, max_input=5) == []


def test_nat_index_check_detects_a_wrong_type(corpus):
    """Un Ω estático falso sí produce violaciones."""
    program = corpus('double')
    checker = TypeChecker(program)
    checker.check_program()
    loop = program.procs[0].lit.body[0]
    forged = dict(checker.static_omega)
    forged[loop.span] = {'b': Nat(Zero())}
    violations = nat_index_violations(program, forged, max_input=2)
    assert violations
    assert all(v.name == 'b' and v.expected == 0 for v in violations)
