"""
Núcleo funcional: términos, valores e impresión.

El núcleo es un λ-cálculo en llamada por valor con naturales, iteración
primitiva de tipo superior (CNatIter), tuplas y registros sin índices.
"""

from dataclasses import dataclass
from typing import Any, Tuple, Union


# ==================== TÉRMINOS ====================

@dataclass(frozen=True)
class CVar:
    name: str


@dataclass(frozen=True)
class CLam:
    param: str
    body: 'CoreTerm'


@dataclass(frozen=True)
class CApp:
    fn: 'CoreTerm'
    arg: 'CoreTerm'


@dataclass(frozen=True)
class CZero:
    pass


@dataclass(frozen=True)
class CSucc:
    arg: 'CoreTerm'


@dataclass(frozen=True)
class CNatIter:
    """step aplicado `bound` veces a base."""
    bound: 'CoreTerm'
    base: 'CoreTerm'
    step: 'CoreTerm'


@dataclass(frozen=True)
class CTuple:
    items: Tuple['CoreTerm', ...] = ()


@dataclass(frozen=True)
class CProj:
    tup: 'CoreTerm'
    index: int


@dataclass(frozen=True)
class CPack:
    items: Tuple['CoreTerm', ...] = ()


CoreTerm = Union[CVar, CLam, CApp, CZero, CSucc, CNatIter, CTuple, CProj, CPack]


def succ_chain(term: CoreTerm, count: int) -> CoreTerm:
    for _ in range(count):
        term = CSucc(term)
    return term


def core_numeral(n: int) -> CoreTerm:
    return succ_chain(CZero(), n)


def let(name: str, value: CoreTerm, body: CoreTerm) -> CoreTerm:
    """let name = value in body, como aplicación de una λ."""
    return CApp(CLam(name, body), value)


# ==================== VALORES ====================

@dataclass(frozen=True, eq=False)
class Closure:
    param: str
    body: CoreTerm
    env: Any

    def __str__(self) -> str:
        return '<fn>'


class PackValue(tuple):
    """Registro evaluado: una tupla que se imprime como pack(...)."""

    def __repr__(self) -> str:
        return f"PackValue{tuple.__repr__(self)}"


def render_core(value: Any) -> str:
    if isinstance(value, int):
        return str(value)
    if isinstance(value, PackValue):
        return f"pack({', '.join(render_core(v) for v in value)})"
    return '<fn>'


# ==================== IMPRESIÓN ====================

def _numeral_of(term: CoreTerm):
    count = 0
    while isinstance(term, CSucc):
        count += 1
        term = term.arg
    return count if isinstance(term, CZero) else None


def show_core(term: CoreTerm) -> str:
    """Forma S-expresión estable (la usa el subcomando translate)."""
    # Iterativo sobre una pila: los términos traducidos son profundos
    out = []
    stack: list = [term]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        if isinstance(item, CVar):
            out.append(item.name)
        elif isinstance(item, (CZero, CSucc)) and _numeral_of(item) is not None:
            out.append(str(_numeral_of(item)))
        elif isinstance(item, CSucc):
            stack.extend([')', item.arg, '(succ '])
        elif isinstance(item, CLam):
            stack.extend([')', item.body, f"(lambda ({item.param}) "])
        elif isinstance(item, CApp):
            stack.extend([')', item.arg, ' ', item.fn, '('])
        elif isinstance(item, CNatIter):
            stack.extend([')', item.step, ' ', item.base, ' ', item.bound, '(natiter '])
        elif isinstance(item, CProj):
            stack.extend([')', item.tup, f"(proj {item.index} "])
        else:
            head = 'tuple' if isinstance(item, CTuple) else 'pack'
            parts: list = [')']
            for child in reversed(item.items):
                parts.extend([child, ' '])
            parts.append(f"({head}")
            stack.extend(parts)
    return ''.join(out)
