"""
Triples de Hoare {φ} s ▷ Ω′ {ψ} sobre la ranura de aserción del checker.

La ranura se inicializa con la precondición, las afirmaciones `claim` la
sustituyen y al final se emite la obligación actual ⇒ ψ. La regla de
consecuencia no construye término de prueba: sus dos premisas son
obligaciones que descarga el motor de índices.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..errors import NonDataMuteAssertion
from ..index.entailment import is_data_mute
from ..syntax.ast import NO_SPAN, IndexFormula, Ty, Seq, conjoin
from ..checker.context import Context, SeqResult
from .obligations import Obligation

logger = logging.getLogger('LoopW.Hoare')


@dataclass(frozen=True)
class Triple:
    """Triple Γ;Ω ⊢ {pre} seq ▷ omega_out {post}."""
    pre: IndexFormula
    seq: Seq
    omega_out: Optional[Dict[str, Ty]]
    post: IndexFormula


def _require_data_mute(*formulas: Optional[IndexFormula]) -> None:
    for formula in formulas:
        if formula is not None and not is_data_mute(formula):
            raise NonDataMuteAssertion(f"aserción fuera del fragmento data-mute: {formula!r}")


def check_triple(checker, ctx: Context, triple: Triple) -> Tuple[SeqResult, List[Obligation]]:
    """
    Comprueba un triple con el checker dado.

    Args:
        checker: TypeChecker (aporta E, el motor de implicación y el registro)
        ctx: Contexto Γ;Ω de partida
        triple: Triple a comprobar

    Returns:
        (resultado de la secuencia, obligaciones emitidas por el triple)

    Raises:
        NonDataMuteAssertion: Si pre o post no son data-mute
    """
    _require_data_mute(triple.pre, triple.post)
    mark = checker.ledger.mark()
    start = ctx.copy()
    start.assertion = conjoin(triple.pre)
    result = checker.check_seq(start, triple.seq, triple.omega_out)
    if result.reachable:
        span = triple.seq[-1].span if triple.seq else NO_SPAN
        checker.ledger.emit([result.assertion], triple.post, span, 'triple-post', ctx.proc)
    return result, checker.ledger.since(mark)


def triple_accepted(checker, ctx: Context, triple: Triple) -> bool:
    _, obligations = check_triple(checker, ctx, triple)
    return all(ob.status.proven for ob in obligations)


def apply_consequence(checker, ctx: Context, pre: IndexFormula, triple: Triple,
                      post: IndexFormula) -> Tuple[Triple, List[Obligation]]:
    """
    Regla de consecuencia: de {φ} s {ψ} a {φ′} s {ψ′}.

    Args:
        checker: TypeChecker
        ctx: Contexto (solo aporta el nombre del procedimiento)
        pre: φ′, la nueva precondición
        triple: Triple interior
        post: ψ′, la nueva postcondición

    Returns:
        (triple ampliado, [obligación φ′ ⇒ φ, obligación ψ ⇒ ψ′])
    """
    _require_data_mute(pre, triple.pre, triple.post, post)
    span = triple.seq[0].span if triple.seq else NO_SPAN
    strengthen = checker.ledger.emit([pre], conjoin(triple.pre), span, 'consequence-pre', ctx.proc)
    weaken = checker.ledger.emit([triple.post], conjoin(post), span, 'consequence-post', ctx.proc)
    widened = Triple(pre, triple.seq, triple.omega_out, post)
    logger.debug(f"Consecuencia: {strengthen.status} / {weaken.status}")
    return widened, [strengthen, weaken]


def consequence_accepted(checker, ctx: Context, pre: IndexFormula, triple: Triple,
                         post: IndexFormula) -> bool:
    """El triple ampliado se acepta si el interior se acepta y ambas premisas son PROVEN."""
    _, premises = apply_consequence(checker, ctx, pre, triple, post)
    return triple_accepted(checker, ctx, triple) and all(ob.status.proven for ob in premises)
