"""
Entornos del typechecker: Γ (inmutables), Ω (mutables) y la ranura de aserción.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Optional, Tuple, Union

from ..syntax.ast import Truth, IndexFormula, Ty, conjoin


class _Uninit:
    """Marca de variable mutable declarada pero aún sin valor."""

    def __repr__(self) -> str:
        return 'UNINIT'


UNINIT = _Uninit()

OmegaEntry = Union[Ty, _Uninit]


@dataclass
class Context:
    """
    Contexto de tipado Γ;Ω.

    gamma guarda valores inmutables (parámetros de entrada, procedimientos
    de nivel superior, etiquetas, contadores de bucle, nombres de unpack).
    omega guarda las variables mutables en orden; sus tipos cambian a lo
    largo de una secuencia. hidden son mutables de un ámbito exterior que
    la huella actual oculta.
    """
    proc: str = ''
    indices: Tuple[str, ...] = ()
    gamma: Dict[str, Ty] = field(default_factory=dict)
    omega: Dict[str, OmegaEntry] = field(default_factory=dict)
    declared: Dict[str, Ty] = field(default_factory=dict)
    hidden: FrozenSet[str] = frozenset()
    assertion: IndexFormula = field(default_factory=Truth)

    def copy(self) -> 'Context':
        return replace(self, gamma=dict(self.gamma), omega=dict(self.omega),
                       declared=dict(self.declared))

    def with_indices(self, *names: str) -> 'Context':
        ctx = self.copy()
        ctx.indices = self.indices + tuple(n for n in names if n not in self.indices)
        return ctx

    def assume(self, formula: Optional[IndexFormula]) -> None:
        """Añade un hecho a la ranura de aserción."""
        self.assertion = conjoin(self.assertion, formula)


@dataclass(frozen=True)
class SeqResult:
    """Ω′ de una secuencia, si su final es alcanzable y la aserción final."""
    omega_out: Dict[str, OmegaEntry]
    reachable: bool = True
    assertion: IndexFormula = field(default_factory=Truth)

    @classmethod
    def unreachable(cls, ctx: Context) -> 'SeqResult':
        return cls(dict(ctx.omega), False, ctx.assertion)
