"""
Valores del intérprete directo.

Los numerales son int de Python; los procedimientos son clausuras sobre
los inmutables (y la valoración de índices) del punto de creación; los
registros guardan sus componentes con valor y, para la traza, los índices
con que se empaquetaron; las etiquetas son marcas únicas por entrada
dinámica en su bloque.
"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from ..syntax.ast import ProcLit

_TAG_IDS = itertools.count(1)


@dataclass(eq=False)
class ProcValue:
    lit: ProcLit
    env: Dict[str, Any]
    valuation: Dict[str, int] = field(default_factory=dict)

    def __str__(self) -> str:
        return '<fn>'


@dataclass(frozen=True)
class Packed:
    comps: Tuple[Any, ...]
    indices: Tuple[Optional[int], ...] = field(default=(), compare=False)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=False)
class LabelTag:
    name: str
    arity: int
    ident: int = field(default_factory=lambda: next(_TAG_IDS))

    def __str__(self) -> str:
        return f"{self.name}#{self.ident}"


def render(value: Any) -> str:
    """Forma impresa compartida por el intérprete y el núcleo funcional."""
    if isinstance(value, bool):
        raise TypeError("los booleanos no son valores de Loop^ω")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Packed):
        return f"pack({', '.join(render(c) for c in value.comps)})"
    return '<fn>'
