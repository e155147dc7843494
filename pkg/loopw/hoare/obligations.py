"""
Obligaciones de prueba (condiciones de verificación) y su registro.

Cada obligación es un secuente hyps ⊢ goal con origen (procedimiento,
posición y regla) y un estado de descarga. El registro las descarga con
el motor de índices en el momento de emitirlas, salvo que la descarga
esté desactivada.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..index.entailment import Entailment
from ..index.rewriting import ProofStatus, unproven
from ..syntax.ast import (
    Span, NO_SPAN, Truth, Implies, Forall, IndexFormula, conjoin, conjuncts,
)
from ..syntax.printer import show_formula

logger = logging.getLogger('LoopW.Hoare')

PENDING = unproven('pending')
SKIPPED = unproven('skipped')


@dataclass
class Obligation:
    """Condición de verificación hyps ⊢ goal."""
    hyps: Tuple[IndexFormula, ...]
    goal: IndexFormula
    span: Span = NO_SPAN
    rule: str = 'claim'
    proc: str = ''
    status: ProofStatus = field(default=PENDING)

    def formula(self) -> IndexFormula:
        """La obligación como una única fórmula cerrada bajo las hipótesis."""
        hyps = conjoin(*self.hyps)
        return self.goal if isinstance(hyps, Truth) else Implies(hyps, self.goal)

    def to_line(self) -> str:
        return '\t'.join([self.status.label, self.proc or '-', str(self.span),
                          show_formula(self.goal)])

    def sort_key(self):
        return (self.span.line, self.span.col)

    def to_dict(self) -> dict:
        return {
            'status': self.status.label,
            'reason': self.status.reason,
            'proc': self.proc,
            'line': self.span.line,
            'col': self.span.col,
            'rule': self.rule,
            'hyps': ' && '.join(show_formula(h) for h in self.hyps) or 'true',
            'goal': show_formula(self.goal),
        }


class ObligationLedger:
    """Registro ordenado de obligaciones emitidas por el checker."""

    def __init__(self, entailment: Entailment, discharge: bool = True):
        self.entailment = entailment
        self.discharge = discharge
        self.obligations: List[Obligation] = []

    def emit(self, hyps: Sequence[Optional[IndexFormula]], goal: IndexFormula,
             span: Span, rule: str, proc: str) -> Obligation:
        """
        Crea y descarga una obligación.

        Args:
            hyps: Hipótesis (se descartan None y `true`)
            goal: Objetivo
            span: Posición de origen
            rule: Regla que la genera ('claim', 'call-pre', 'post', ...)
            proc: Procedimiento de origen

        Returns:
            La obligación con su estado
        """
        flat: List[IndexFormula] = []
        for h in hyps:
            flat.extend(conjuncts(h))
        obligation = Obligation(tuple(flat), goal, span, rule, proc)
        obligation.status = self.entailment.entails(flat, goal) if self.discharge else SKIPPED
        logger.debug(f"Obligación {rule} en {proc}:{span}: {obligation.status}")
        self.obligations.append(obligation)
        return obligation

    def mark(self) -> int:
        return len(self.obligations)

    def since(self, mark: int) -> List[Obligation]:
        return self.obligations[mark:]

    def sorted(self) -> List[Obligation]:
        return sorted(self.obligations, key=Obligation.sort_key)


def closed_implication(binders: Sequence[str], left: Optional[IndexFormula],
                       right: Optional[IndexFormula]) -> IndexFormula:
    """∀ī. left ⇒ right, omitiendo `true` a la izquierda."""
    left = conjoin(left)
    right = conjoin(right)
    body = right if isinstance(left, Truth) else Implies(left, right)
    for name in reversed(tuple(binders)):
        body = Forall(name, body)
    return body
