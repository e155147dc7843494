"""
Motor de reescritura para el sistema de ecuaciones E.

Las ecuaciones se orientan de izquierda a derecha tal como están escritas
(sistemas de Herbrand-Gödel: son programas, no teorías). La normalización
sigue la estrategia leftmost-outermost con un límite de pasos; la
estrategia rightmost-innermost existe para comprobar confluencia.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional, Sequence, Tuple

from ..errors import StepCapExceeded
from ..syntax.ast import IVar, Zero, Succ, App, IndexTerm, Program, add_succ, numeral_value, peel_succ
from ..syntax.substitution import subst_term

logger = logging.getLogger('LoopW.IndexEngine')

Rule = Tuple[IndexTerm, IndexTerm]


class ProofState(Enum):
    """Resultado de una comprobación de igualdad o implicación."""
    PROVEN = "proven"
    REFUTED = "refuted"
    UNPROVEN = "unproven"


@dataclass(frozen=True)
class ProofStatus:
    """Estado de descarga de una obligación."""
    state: ProofState
    reason: str = ''
    counterexample: Optional[Tuple[Tuple[str, int], ...]] = None

    @property
    def proven(self) -> bool:
        return self.state is ProofState.PROVEN

    @property
    def refuted(self) -> bool:
        return self.state is ProofState.REFUTED

    @property
    def label(self) -> str:
        return self.state.name

    def __str__(self) -> str:
        return f"{self.label}({self.reason})" if self.reason else self.label


PROVEN = ProofStatus(ProofState.PROVEN)


def refuted(reason: str = '', counterexample=None) -> ProofStatus:
    return ProofStatus(ProofState.REFUTED, reason, counterexample)


def unproven(reason: str) -> ProofStatus:
    return ProofStatus(ProofState.UNPROVEN, reason)


class EqSystem:
    """Sistema de ecuaciones orientadas con límite de pasos."""

    def __init__(self, rules: Sequence[Rule] = (), step_cap: int = 10_000):
        """
        Inicializa el sistema.

        Args:
            rules: Pares (lhs, rhs) en orden de declaración
            step_cap: Número máximo de pasos de reescritura por normalización
        """
        if step_cap < 1:
            raise ValueError("step_cap debe ser >= 1")
        self.rules: Tuple[Rule, ...] = tuple(rules)
        self.step_cap = step_cap
        self._memo: Dict[IndexTerm, IndexTerm] = {}
        self._by_symbol: Dict[str, Tuple[Rule, ...]] = {}
        for lhs, rhs in self.rules:
            if isinstance(lhs, App):
                self._by_symbol[lhs.fsym] = self._by_symbol.get(lhs.fsym, ()) + ((lhs, rhs),)

    @classmethod
    def from_program(cls, program: Program, step_cap: int = 10_000) -> 'EqSystem':
        return cls([(eq.lhs, eq.rhs) for eq in program.equations], step_cap)

    # ==================== MATCHING ====================

    def match(self, pattern: IndexTerm, term: IndexTerm,
              binding: Optional[Dict[str, IndexTerm]] = None) -> Optional[Dict[str, IndexTerm]]:
        """
        Empareja un patrón con un término.

        Returns:
            Sustitución que hace pattern == term, o None
        """
        binding = {} if binding is None else binding
        if isinstance(pattern, IVar):
            bound = binding.get(pattern.name)
            if bound is None:
                binding[pattern.name] = term
                return binding
            return binding if bound == term else None
        if isinstance(pattern, Zero):
            return binding if isinstance(term, Zero) else None
        if isinstance(pattern, Succ):
            count, base = peel_succ(pattern)
            for _ in range(count):
                if not isinstance(term, Succ):
                    return None
                term = term.arg
            return self.match(base, term, binding)
        if isinstance(pattern, App):
            if not isinstance(term, App) or term.fsym != pattern.fsym or len(term.args) != len(pattern.args):
                return None
            for p, t in zip(pattern.args, term.args):
                if self.match(p, t, binding) is None:
                    return None
            return binding
        return None

    def rewrite_root(self, term: IndexTerm) -> Optional[IndexTerm]:
        """Aplica la primera regla (en orden) que empareja en la raíz."""
        if not isinstance(term, App):
            return None
        for lhs, rhs in self._by_symbol.get(term.fsym, ()):
            binding = self.match(lhs, term)
            if binding is not None:
                return subst_term(rhs, binding)
        return None

    # ==================== ESTRATEGIAS ====================

    def step_outermost(self, term: IndexTerm) -> Optional[IndexTerm]:
        """Un paso leftmost-outermost, o None si el término es normal."""
        reduct = self.rewrite_root(term)
        if reduct is not None:
            return reduct
        if isinstance(term, Succ):
            count, base = peel_succ(term)
            inner = self.step_outermost(base)
            return None if inner is None else add_succ(inner, count)
        if isinstance(term, App):
            for i, arg in enumerate(term.args):
                inner = self.step_outermost(arg)
                if inner is not None:
                    return App(term.fsym, term.args[:i] + (inner,) + term.args[i + 1:])
        return None

    def step_innermost(self, term: IndexTerm) -> Optional[IndexTerm]:
        """Un paso rightmost-innermost, o None si el término es normal."""
        if isinstance(term, Succ):
            count, base = peel_succ(term)
            inner = self.step_innermost(base)
            return None if inner is None else add_succ(inner, count)
        if isinstance(term, App):
            for i in reversed(range(len(term.args))):
                inner = self.step_innermost(term.args[i])
                if inner is not None:
                    return App(term.fsym, term.args[:i] + (inner,) + term.args[i + 1:])
        return self.rewrite_root(term)

    def normalize(self, term: IndexTerm, strategy: str = 'outermost') -> IndexTerm:
        """
        Reescribe hasta el punto fijo.

        Args:
            term: Término a normalizar
            strategy: 'outermost' (por defecto) o 'innermost'

        Returns:
            Forma normal

        Raises:
            StepCapExceeded: Si se agota step_cap; lleva el último término alcanzado
        """
        use_memo = strategy == 'outermost'
        if use_memo and term in self._memo:
            return self._memo[term]
        step = self.step_outermost if use_memo else self.step_innermost
        current = term
        for _ in range(self.step_cap):
            nxt = step(current)
            if nxt is None:
                if use_memo:
                    self._memo[term] = current
                return current
            current = nxt
        logger.debug(f"Límite de reescritura agotado ({self.step_cap} pasos)")
        raise StepCapExceeded(current, self.step_cap)


def normalize(term: IndexTerm, eqs: EqSystem) -> IndexTerm:
    """Forma normal leftmost-outermost de `term` bajo E."""
    return eqs.normalize(term)


def is_ground_numeral(term: IndexTerm) -> bool:
    return numeral_value(term) is not None


def terms_equal(t1: IndexTerm, t2: IndexTerm, eqs: EqSystem) -> ProofStatus:
    """
    Igualdad de términos módulo E.

    Returns:
        PROVEN si las formas normales coinciden; REFUTED si ambas son
        numerales distintos; UNPROVEN en otro caso (o si se agota el límite)
    """
    try:
        n1 = eqs.normalize(t1)
        n2 = eqs.normalize(t2)
    except StepCapExceeded:
        return unproven('cap')
    if n1 == n2:
        return PROVEN
    if is_ground_numeral(n1) and is_ground_numeral(n2):
        return refuted('numerales distintos')
    return unproven('formas normales distintas')


def combine_all(statuses: Iterable[ProofStatus]) -> ProofStatus:
    """Conjunción de estados: REFUTED domina, luego UNPROVEN."""
    pending = None
    for status in statuses:
        if status.refuted:
            return status
        if not status.proven and pending is None:
            pending = status
    return pending or PROVEN
