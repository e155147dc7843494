"""Tests de la sustitución de variables de índice."""

from loopw.syntax.ast import App, Eq, Exists, Forall, IVar, Nat, Succ, Zero
from loopw.syntax.substitution import (
    FreshNames, formula_vars, instantiate, rename_apart, subst_formula, subst_term, subst_ty, type_vars,
)


def test_subst_term():
    term = App('add', (IVar('n'), Succ(IVar('m'))))
    assert subst_term(term, {'n': Zero()}) == App('add', (Zero(), Succ(IVar('m'))))


def test_bound_variable_is_not_replaced():
    formula = Forall('n', Eq(IVar('n'), IVar('m')))
    assert subst_formula(formula, {'n': Zero()}) == formula


def test_forall_binder_avoids_capture():
    """Sustituir m por n bajo ∀n renombra el ligador."""
    result = subst_formula(Forall('n', Eq(IVar('n'), IVar('m'))), {'m': IVar('n')}, FreshNames())
    assert isinstance(result, Forall)
    assert result.var != 'n'
    assert result.body == Eq(IVar(result.var), IVar('n'))


def test_exists_binder_avoids_capture():
    ty = Exists(('k',), (Nat(App('add', (IVar('k'), IVar('n')))),))
    result = subst_ty(ty, {'n': IVar('k')}, FreshNames())
    (binder,) = result.binders
    assert binder != 'k'
    assert result.comps == (Nat(App('add', (IVar(binder), IVar('k')))),)
    assert type_vars(result) == {'k'}


def test_instantiate_and_rename_apart():
    assert instantiate(('n', 'm'), (Zero(), Succ(Zero()))) == {'n': Zero(), 'm': Succ(Zero())}
    new, subst = rename_apart(('i',), frozenset({'i'}), FreshNames())
    assert new[0] != 'i'
    assert subst == {'i': IVar(new[0])}


def test_formula_vars_excludes_bound():
    assert formula_vars(Forall('x', Eq(IVar('x'), IVar('y')))) == {'y'}
