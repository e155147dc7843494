"""
Variables libres y sustitución sin captura sobre términos, fórmulas y tipos.

Las sustituciones son diccionarios nombre -> IndexTerm. Los ligadores
(∀ de fórmulas, ∀ī de procedimientos, ∃ī de registros) se renombran con
nombres frescos cuando capturarían una variable del rango.
"""

import itertools
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple

from .ast import (
    IVar, Zero, Succ, App, IndexTerm,
    Truth, Eq, And, Implies, Forall, IndexFormula,
    Nat, Proc, Exists, EqTy, LabelTy, Ty,
    add_succ, peel_succ,
)

Subst = Dict[str, IndexTerm]


class FreshNames:
    """Generador determinista de nombres frescos (`n#1`, `n#2`, ...)."""

    def __init__(self):
        self._counter = itertools.count(1)

    def fresh(self, base: str, avoid: Iterable[str] = ()) -> str:
        avoid = set(avoid)
        root = base.split('#', 1)[0]
        while True:
            name = f"{root}#{next(self._counter)}"
            if name not in avoid:
                return name


_GLOBAL_FRESH = FreshNames()


# ==================== VARIABLES LIBRES ====================

def term_vars(term: IndexTerm) -> Set[str]:
    """Variables de un término de índice."""
    if isinstance(term, IVar):
        return {term.name}
    if isinstance(term, Succ):
        return term_vars(peel_succ(term)[1])
    if isinstance(term, App):
        result: Set[str] = set()
        for arg in term.args:
            result |= term_vars(arg)
        return result
    return set()


def formula_vars(formula: Optional[IndexFormula]) -> Set[str]:
    """Variables libres de una fórmula."""
    if formula is None or isinstance(formula, Truth):
        return set()
    if isinstance(formula, Eq):
        return term_vars(formula.lhs) | term_vars(formula.rhs)
    if isinstance(formula, (And, Implies)):
        return formula_vars(formula.left) | formula_vars(formula.right)
    if isinstance(formula, Forall):
        return formula_vars(formula.body) - {formula.var}
    return set()


def type_vars(ty: Ty) -> Set[str]:
    """Variables de índice libres de un tipo."""
    if isinstance(ty, Nat):
        return term_vars(ty.index)
    if isinstance(ty, EqTy):
        return term_vars(ty.lhs) | term_vars(ty.rhs)
    if isinstance(ty, Proc):
        inner = set()
        for t in ty.ins + ty.outs:
            inner |= type_vars(t)
        inner |= formula_vars(ty.pre) | formula_vars(ty.post)
        return inner - set(ty.binders)
    if isinstance(ty, Exists):
        inner = set()
        for t in ty.comps:
            inner |= type_vars(t)
        return inner - set(ty.binders)
    if isinstance(ty, LabelTy):
        inner = formula_vars(ty.assertion)
        for t in ty.neg_args:
            inner |= type_vars(t)
        return inner
    return set()


def _range_vars(subst: Subst) -> Set[str]:
    result: Set[str] = set()
    for term in subst.values():
        result |= term_vars(term)
    return result


# ==================== SUSTITUCIÓN ====================

def subst_term(term: IndexTerm, subst: Subst) -> IndexTerm:
    if not subst:
        return term
    if isinstance(term, IVar):
        return subst.get(term.name, term)
    if isinstance(term, Succ):
        count, base = peel_succ(term)
        replaced = subst_term(base, subst)
        return term if replaced is base else add_succ(replaced, count)
    if isinstance(term, App):
        return App(term.fsym, tuple(subst_term(a, subst) for a in term.args))
    return term


def _rename_binders(binders: Tuple[str, ...], subst: Subst, body_vars: Set[str],
                    fresh: FreshNames) -> Tuple[Tuple[str, ...], Subst]:
    """
    Renombra los ligadores que capturarían variables del rango.

    Returns:
        Tupla (nuevos ligadores, sustitución extendida para el cuerpo)
    """
    inner = {k: v for k, v in subst.items() if k not in binders}
    danger = _range_vars(inner)
    new_binders = []
    for b in binders:
        if b in danger:
            nb = fresh.fresh(b, danger | body_vars | set(binders))
            inner[b] = IVar(nb)
            new_binders.append(nb)
        else:
            new_binders.append(b)
    return tuple(new_binders), inner


def subst_formula(formula: Optional[IndexFormula], subst: Subst,
                  fresh: FreshNames = _GLOBAL_FRESH) -> Optional[IndexFormula]:
    if formula is None or not subst:
        return formula
    if isinstance(formula, Truth):
        return formula
    if isinstance(formula, Eq):
        return Eq(subst_term(formula.lhs, subst), subst_term(formula.rhs, subst))
    if isinstance(formula, And):
        return And(subst_formula(formula.left, subst, fresh), subst_formula(formula.right, subst, fresh))
    if isinstance(formula, Implies):
        return Implies(subst_formula(formula.left, subst, fresh), subst_formula(formula.right, subst, fresh))
    if isinstance(formula, Forall):
        (var,), inner = _rename_binders((formula.var,), subst, formula_vars(formula.body), fresh)
        return Forall(var, subst_formula(formula.body, inner, fresh))
    return formula


def subst_ty(ty: Ty, subst: Subst, fresh: FreshNames = _GLOBAL_FRESH) -> Ty:
    if not subst:
        return ty
    if isinstance(ty, Nat):
        return Nat(subst_term(ty.index, subst))
    if isinstance(ty, EqTy):
        return EqTy(subst_term(ty.lhs, subst), subst_term(ty.rhs, subst))
    if isinstance(ty, Proc):
        binders, inner = _rename_binders(ty.binders, subst, type_vars(ty) | set(ty.binders), fresh)
        return Proc(binders,
                    tuple(subst_ty(t, inner, fresh) for t in ty.ins),
                    tuple(subst_ty(t, inner, fresh) for t in ty.outs),
                    subst_formula(ty.pre, inner, fresh),
                    subst_formula(ty.post, inner, fresh))
    if isinstance(ty, Exists):
        binders, inner = _rename_binders(ty.binders, subst, type_vars(ty) | set(ty.binders), fresh)
        return Exists(binders, tuple(subst_ty(t, inner, fresh) for t in ty.comps))
    if isinstance(ty, LabelTy):
        return LabelTy(tuple(subst_ty(t, subst, fresh) for t in ty.neg_args),
                       subst_formula(ty.assertion, subst, fresh))
    return ty


def instantiate(binders: Tuple[str, ...], args: Tuple[IndexTerm, ...]) -> Subst:
    """Sustitución ligador_i -> argumento_i."""
    return dict(zip(binders, args))


def rename_apart(binders: Tuple[str, ...], avoid: FrozenSet[str],
                 fresh: FreshNames) -> Tuple[Tuple[str, ...], Subst]:
    """Nombres frescos para un bloque de ligadores (para comparar tipos)."""
    new = tuple(fresh.fresh(b, avoid) for b in binders)
    return new, {b: IVar(n) for b, n in zip(binders, new)}
