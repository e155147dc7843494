"""
Tests del procedimiento de implicación sobre aserciones data-mute.
"""

import itertools
import random

from loopw.index.entailment import Entailment, entails, eval_formula, is_data_mute
from loopw.index.rewriting import ProofState
from loopw.syntax.ast import App, Eq, IVar, Succ, Zero, numeral
from loopw.syntax.parser import parse_formula
from loopw.syntax.substitution import formula_vars

ARITIES = {'add': 2}


def f(text):
    return parse_formula(text, ARITIES)


def test_reflexive_goal_is_proven(add_eqs):
    assert entails([], f("n = n"), add_eqs).proven


def test_goal_proven_by_normalization(add_eqs):
    assert entails([], f("add(s(0), n) = s(n)"), add_eqs).proven


def test_false_ground_goal_is_refuted(add_eqs):
    status = entails([f("add(s(0), n) = s(n)")], f("0 = s(0)"), add_eqs)
    assert status.refuted
    assert status.counterexample is not None


def test_hypothesis_substitution(add_eqs):
    """x = s(y) permite probar add(0, x) = s(y)."""
    assert entails([f("x = s(y)")], f("add(0, x) = s(y)"), add_eqs).proven


def test_implication_and_forall_goals(add_eqs):
    assert entails([], f("forall k. add(0, k) = k"), add_eqs).proven
    assert entails([], f("x = 0 => add(x, y) = y"), add_eqs).proven


def test_inconsistent_hypotheses(add_eqs):
    assert entails([f("0 = s(x)")], f("x = y"), add_eqs).proven


def test_open_goal_without_counterexample_is_unproven(add_eqs):
    status = entails([], f("add(x, y) = add(y, x)"), add_eqs, bound=3)
    assert status.state is ProofState.UNPROVEN
    assert status.reason.startswith('bounded')


def test_open_goal_refuted_by_smallest_valuation(add_eqs):
    status = entails([], f("x = 9"), add_eqs)
    assert status.refuted
    assert status.counterexample == (('x', 0),)


def test_too_many_valuations(add_eqs):
    engine = Entailment(add_eqs, bound=8, max_valuations=10)
    status = engine.entails([], f("add(x, y) = add(y, x)"))
    assert status.reason == 'bounded: demasiadas valoraciones'


def test_data_mute_fragment():
    assert is_data_mute(f("forall i. add(i, 0) = i && true"))
    assert not is_data_mute(Eq(IVar('x'), 'x'))


def test_eval_formula_three_valued(add_eqs):
    formula = f("forall i. add(i, 0) = i")
    assert eval_formula(formula, {}, add_eqs, bound=3) is None
    assert eval_formula(f("x = 1"), {'x': 1}, add_eqs) is True
    assert eval_formula(f("x = 1"), {}, add_eqs) is None


# ==================== CORRECCIÓN ====================

def _random_term(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([Zero(), IVar('x'), IVar('y'), numeral(rng.randint(1, 3))])
    if rng.random() < 0.4:
        return Succ(_random_term(rng, depth - 1))
    return App('add', (_random_term(rng, depth - 1), _random_term(rng, depth - 1)))


def _random_eq(rng: random.Random):
    return Eq(_random_term(rng, 3), _random_term(rng, 3))


def _valuations(formulas, bound=8):
    names = sorted(set().union(*(formula_vars(g) for g in formulas)))
    for values in itertools.product(range(bound + 1), repeat=len(names)):
        yield dict(zip(names, values))


def test_entails_is_sound_on_small_valuations(add_eqs):
    """Nunca PROVEN si alguna valoración <= 8 cumple las hipótesis y falsea el objetivo."""
    rng = random.Random(7)
    for _ in range(300):
        hyps = [_random_eq(rng) for _ in range(rng.randint(0, 2))]
        goal = _random_eq(rng)
        status = entails(hyps, goal, add_eqs)
        if status.proven:
            for valuation in _valuations(hyps + [goal]):
                if all(eval_formula(h, valuation, add_eqs) for h in hyps):
                    assert eval_formula(goal, valuation, add_eqs) is True, (hyps, goal, valuation)
        elif status.refuted:
            valuation = dict(status.counterexample or ())
            if valuation or not formula_vars(goal):
                assert eval_formula(goal, valuation, add_eqs) is False
