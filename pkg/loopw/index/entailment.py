"""
Semidecisión de implicación entre aserciones data-mute.

El procedimiento es correcto pero incompleto:

1. El objetivo se descompone (∀ se refresca, ∧ se separa, las premisas
   de ⇒ pasan a las hipótesis).
2. Una igualdad objetivo se intenta cerrar por normalización, resolviendo
   las ecuaciones hipótesis con cabeza variable por sustitución, y por
   cierre de congruencia sobre las ecuaciones restantes.
3. Si sigue abierta se prueba con todas las valoraciones numéricas de
   las variables libres hasta la cota B. Un contraejemplo da REFUTED;
   si no aparece ninguno el resultado es UNPROVEN("bounded").
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import StepCapExceeded
from ..syntax.ast import (
    IVar, Zero, Succ, App, IndexTerm, numeral, numeral_value, peel_succ,
    Truth, Eq, And, Implies, Forall, IndexFormula, conjuncts,
)
from ..syntax.substitution import (
    FreshNames, Subst, formula_vars, subst_formula, subst_term, term_vars,
)
from .rewriting import (
    EqSystem, ProofStatus, PROVEN, combine_all, refuted, terms_equal, unproven,
)

logger = logging.getLogger('LoopW.IndexEngine')

DEFAULT_BOUND = 8
DEFAULT_MAX_VALUATIONS = 200_000


# ==================== FRAGMENTO DATA-MUTE ====================

def _is_index_term(term) -> bool:
    _, term = peel_succ(term)
    if isinstance(term, (IVar, Zero)):
        return True
    if isinstance(term, App):
        return all(_is_index_term(a) for a in term.args)
    return False


def is_data_mute(formula) -> bool:
    """
    Indica si una fórmula pertenece al fragmento {=, ∧, ⇒, ∀, true}.

    Args:
        formula: Fórmula (o cualquier objeto)

    Returns:
        True si está dentro del fragmento
    """
    if isinstance(formula, Truth):
        return True
    if isinstance(formula, Eq):
        return _is_index_term(formula.lhs) and _is_index_term(formula.rhs)
    if isinstance(formula, (And, Implies)):
        return is_data_mute(formula.left) and is_data_mute(formula.right)
    if isinstance(formula, Forall):
        return isinstance(formula.var, str) and is_data_mute(formula.body)
    return False


# ==================== EVALUACIÓN TRIVALUADA ====================

def eval_term(term: IndexTerm, valuation: Dict[str, int], eqs: EqSystem) -> Optional[int]:
    """Valor numérico de un término bajo una valoración, o None."""
    if not term_vars(term) <= valuation.keys():
        return None
    closed = subst_term(term, {v: numeral(n) for v, n in valuation.items()})
    try:
        return numeral_value(eqs.normalize(closed))
    except StepCapExceeded:
        return None


def eval_formula(formula: IndexFormula, valuation: Dict[str, int], eqs: EqSystem,
                 bound: int = DEFAULT_BOUND) -> Optional[bool]:
    """
    Evalúa una fórmula en lógica trivaluada (None = desconocido).

    Un ∀ solo puede resultar False (contraejemplo dentro de la cota) o
    desconocido; nunca True.
    """
    if isinstance(formula, Truth):
        return True
    if isinstance(formula, Eq):
        lhs = eval_term(formula.lhs, valuation, eqs)
        rhs = eval_term(formula.rhs, valuation, eqs)
        if lhs is None or rhs is None:
            return None
        return lhs == rhs
    if isinstance(formula, And):
        left = eval_formula(formula.left, valuation, eqs, bound)
        if left is False:
            return False
        right = eval_formula(formula.right, valuation, eqs, bound)
        if right is False:
            return False
        return True if left and right else None
    if isinstance(formula, Implies):
        left = eval_formula(formula.left, valuation, eqs, bound)
        if left is False:
            return True
        right = eval_formula(formula.right, valuation, eqs, bound)
        if right is True:
            return True
        return False if left is True and right is False else None
    if isinstance(formula, Forall):
        if formula.var not in formula_vars(formula.body):
            return eval_formula(formula.body, valuation, eqs, bound)
        for n in range(bound + 1):
            inner = dict(valuation)
            inner[formula.var] = n
            if eval_formula(formula.body, inner, eqs, bound) is False:
                return False
        return None
    return None


# ==================== CIERRE DE CONGRUENCIA ====================

class _Congruence:
    """Unión-búsqueda sobre subtérminos con propagación de congruencia."""

    def __init__(self):
        self.parent: Dict[IndexTerm, IndexTerm] = {}

    def add(self, term: IndexTerm) -> None:
        while term not in self.parent:
            self.parent[term] = term
            if not isinstance(term, Succ):
                break
            term = term.arg
        if isinstance(term, App):
            for arg in term.args:
                self.add(arg)

    def find(self, term: IndexTerm) -> IndexTerm:
        root = term
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[term] != root:
            self.parent[term], term = root, self.parent[term]
        return root

    def union(self, a: IndexTerm, b: IndexTerm) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def _congruent(self, a: IndexTerm, b: IndexTerm) -> bool:
        if isinstance(a, Succ) and isinstance(b, Succ):
            return self.find(a.arg) == self.find(b.arg)
        if isinstance(a, App) and isinstance(b, App):
            return (a.fsym == b.fsym and len(a.args) == len(b.args)
                    and all(self.find(x) == self.find(y) for x, y in zip(a.args, b.args)))
        return False

    def close(self) -> None:
        terms = [t for t in self.parent if isinstance(t, (Succ, App))]
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(terms, 2):
                if self.find(a) != self.find(b) and self._congruent(a, b):
                    self.union(a, b)
                    changed = True

    def inconsistent(self) -> bool:
        """Cero y un sucesor en la misma clase."""
        zero_classes = {self.find(t) for t in self.parent if isinstance(t, Zero)}
        return any(isinstance(t, Succ) and self.find(t) in zero_classes for t in self.parent)


# ==================== ENTAILMENT ====================

class Entailment:
    """Semidecisión de hyps ⊢ goal módulo E."""

    def __init__(self, eqs: EqSystem, bound: int = DEFAULT_BOUND,
                 max_valuations: int = DEFAULT_MAX_VALUATIONS,
                 fresh: Optional[FreshNames] = None):
        """
        Inicializa el procedimiento.

        Args:
            eqs: Sistema de ecuaciones
            bound: Cota B de la búsqueda de contraejemplos
            max_valuations: Máximo de valoraciones a probar
            fresh: Generador de nombres frescos para los ∀ del objetivo
        """
        if bound < 1:
            raise ValueError("bound debe ser >= 1")
        self.eqs = eqs
        self.bound = bound
        self.max_valuations = max_valuations
        self.fresh = fresh or FreshNames()

    def entails(self, hyps: Sequence[IndexFormula], goal: IndexFormula) -> ProofStatus:
        flat: List[IndexFormula] = []
        for h in hyps:
            flat.extend(conjuncts(h))
        return self._goal(flat, goal)

    def _goal(self, hyps: List[IndexFormula], goal: IndexFormula) -> ProofStatus:
        if isinstance(goal, Truth):
            return PROVEN
        if isinstance(goal, And):
            return combine_all([self._goal(hyps, goal.left), self._goal(hyps, goal.right)])
        if isinstance(goal, Implies):
            return self._goal(hyps + list(conjuncts(goal.left)), goal.right)
        if isinstance(goal, Forall):
            avoid = formula_vars(goal)
            for h in hyps:
                avoid |= formula_vars(h)
            name = self.fresh.fresh(goal.var, avoid)
            return self._goal(hyps, subst_formula(goal.body, {goal.var: IVar(name)}, self.fresh))
        if isinstance(goal, Eq):
            return self._equation(hyps, goal)
        return unproven('fórmula fuera del fragmento')

    def _equation(self, hyps: List[IndexFormula], goal: Eq) -> ProofStatus:
        direct = terms_equal(goal.lhs, goal.rhs, self.eqs)
        if direct.proven:
            return direct
        try:
            solved = self._solve(hyps)
            if solved is None:
                return ProofStatus(PROVEN.state, 'hipótesis inconsistentes')
            subst, residual = solved
            lhs = self.eqs.normalize(subst_term(goal.lhs, subst))
            rhs = self.eqs.normalize(subst_term(goal.rhs, subst))
            if lhs == rhs:
                return PROVEN
            if residual and self._congruent(residual, lhs, rhs):
                return PROVEN
        except StepCapExceeded:
            logger.debug("Límite de pasos agotado al resolver hipótesis")
        if not hyps and direct.refuted:
            return direct
        return self._bounded(hyps, goal)

    def _solve(self, hyps: List[IndexFormula]) -> Optional[Tuple[Subst, List[Tuple[IndexTerm, IndexTerm]]]]:
        """
        Resuelve las ecuaciones hipótesis con cabeza variable.

        Returns:
            (sustitución, ecuaciones residuales) o None si son inconsistentes
        """
        pending = [(h.lhs, h.rhs) for h in hyps if isinstance(h, Eq)]
        subst: Subst = {}
        for _ in range(len(pending) + 1):
            residual: List[Tuple[IndexTerm, IndexTerm]] = []
            progress = False
            work = list(pending)
            while work:
                a, b = work.pop()
                a = self.eqs.normalize(subst_term(a, subst))
                b = self.eqs.normalize(subst_term(b, subst))
                if a == b:
                    continue
                if isinstance(a, Succ) and isinstance(b, Succ):
                    work.append((a.arg, b.arg))
                    continue
                if (isinstance(a, Zero) and isinstance(b, Succ)) or (isinstance(a, Succ) and isinstance(b, Zero)):
                    return None
                var, value = _orient(a, b)
                if var is not None:
                    subst = {k: subst_term(v, {var: value}) for k, v in subst.items()}
                    subst[var] = value
                    progress = True
                    continue
                residual.append((a, b))
            pending = residual
            if not progress:
                break
        return subst, pending

    def _congruent(self, residual, lhs: IndexTerm, rhs: IndexTerm) -> bool:
        cc = _Congruence()
        for a, b in residual:
            cc.add(a)
            cc.add(b)
        cc.add(lhs)
        cc.add(rhs)
        for a, b in residual:
            cc.union(a, b)
        cc.close()
        return cc.inconsistent() or cc.find(lhs) == cc.find(rhs)

    def _bounded(self, hyps: List[IndexFormula], goal: IndexFormula) -> ProofStatus:
        names = set(formula_vars(goal))
        for h in hyps:
            names |= formula_vars(h)
        names = sorted(names)
        if (self.bound + 1) ** len(names) > self.max_valuations:
            return unproven('bounded: demasiadas valoraciones')
        for values in itertools.product(range(self.bound + 1), repeat=len(names)):
            valuation = dict(zip(names, values))
            if eval_formula(goal, valuation, self.eqs, self.bound) is not False:
                continue
            if all(eval_formula(h, valuation, self.eqs, self.bound) is True for h in hyps):
                logger.debug(f"Contraejemplo encontrado: {valuation}")
                return refuted('contraejemplo', tuple(valuation.items()))
        return unproven('bounded')


def _orient(a: IndexTerm, b: IndexTerm) -> Tuple[Optional[str], Optional[IndexTerm]]:
    if isinstance(a, IVar) and a.name not in term_vars(b):
        return a.name, b
    if isinstance(b, IVar) and b.name not in term_vars(a):
        return b.name, a
    return None, None


def entails(hyps: Sequence[IndexFormula], goal: IndexFormula, eqs: EqSystem,
            bound: int = DEFAULT_BOUND, max_valuations: int = DEFAULT_MAX_VALUATIONS) -> ProofStatus:
    """
    Decide (de forma correcta e incompleta) si hyps implican goal módulo E.

    Args:
        hyps: Hipótesis
        goal: Objetivo
        eqs: Sistema de ecuaciones
        bound: Cota de la búsqueda de contraejemplos

    Returns:
        PROVEN, REFUTED (con contraejemplo) o UNPROVEN
    """
    return Entailment(eqs, bound, max_valuations).entails(hyps, goal)
