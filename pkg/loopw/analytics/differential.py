"""
Comparación diferencial entre el intérprete directo y el núcleo traducido.

Para cada tupla de entradas en 0..N se ejecutan ambos y se comparan las
salidas impresas. También comprueba, sobre la traza, que cada variable con
tipo estático nat(t) vale lo que t normalizado bajo la valoración.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from ..errors import LoopwError
from ..index.rewriting import EqSystem
from ..syntax.ast import Nat, Program, Span, Ty
from ..runtime.interpreter import Interpreter
from ..runtime.values import render
from ..translator.core import render_core
from ..translator.evaluator import eval_core
from ..translator.translate import CoreProgram, translate

logger = logging.getLogger('LoopW.Differential')


@dataclass(frozen=True)
class Divergence:
    """Primera entrada en la que los dos ejecutores no coinciden."""
    inputs: Tuple[int, ...]
    interpreter: Tuple[str, ...]
    core: Tuple[str, ...]


@dataclass(frozen=True)
class IndexViolation:
    """Variable cuyo valor en la traza no coincide con su índice estático."""
    inputs: Tuple[int, ...]
    span: Span
    name: str
    expected: int
    found: object


def _outcome(thunk) -> Tuple[str, ...]:
    try:
        return tuple(thunk())
    except LoopwError as e:
        return (f"{type(e).__name__}",)


def run_both(program: Program, core: CoreProgram, inputs: Tuple[int, ...],
             fuel: int = 2_000_000) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """Salidas impresas del intérprete y del núcleo (o el nombre del error)."""
    direct = _outcome(lambda: [render(v) for v in Interpreter(program, fuel=fuel).run(inputs)])
    translated = _outcome(lambda: [render_core(v) for v in
                                   eval_core(core.entry_application(inputs), fuel=fuel)])
    return direct, translated


def input_space(arity: int, max_input: int):
    return itertools.product(range(max_input + 1), repeat=arity)


def compare_semantics(program: Program, max_input: int = 5, fuel: int = 2_000_000,
                      progress: bool = False) -> Optional[Divergence]:
    """
    Compara ambos ejecutores sobre todas las entradas con componentes ≤ max_input.

    Args:
        program: Programa bien tipado
        max_input: Cota de cada componente de la entrada
        fuel: Combustible de cada ejecución
        progress: Mostrar barra de progreso

    Returns:
        La primera divergencia, o None si coinciden en todas
    """
    core = translate(program)
    arity = core.entry_arity
    total = (max_input + 1) ** arity
    cases = input_space(arity, max_input)
    if progress:
        cases = tqdm(cases, total=total, desc=f"compare {core.entry}", unit="entrada")
    for inputs in cases:
        direct, translated = run_both(program, core, inputs, fuel)
        if direct != translated:
            logger.warning(f"Divergencia en {inputs}: {direct} vs {translated}")
            return Divergence(inputs, direct, translated)
    logger.info(f"{core.entry}: {total} entradas, sin divergencias")
    return None


def nat_index_violations(program: Program, static_omega: Dict[Span, Dict[str, Ty]],
                         max_input: int = 5, eqs: Optional[EqSystem] = None,
                         fuel: int = 2_000_000) -> List[IndexViolation]:
    """
    Contrasta la traza con los tipos nat(t) registrados por el checker.

    Solo se comprueban índices cerrados bajo la valoración de la instantánea.

    Args:
        program: Programa bien tipado
        static_omega: Ω estático por posición (TypeChecker.static_omega)
        max_input: Cota de cada componente de la entrada
        eqs: Ecuaciones de E
        fuel: Combustible de cada ejecución

    Returns:
        Lista de violaciones (vacía si el tipado es correcto en la traza)
    """
    eqs = eqs if eqs is not None else EqSystem.from_program(program)
    arity = len(program.entry_proc().lit.ins)
    violations = []
    for inputs in input_space(arity, max_input):
        interpreter = Interpreter(program, eqs=eqs, fuel=fuel, record=True)
        interpreter.run(inputs)
        for snap in interpreter.snapshots:
            for name, ty in static_omega.get(snap.span, {}).items():
                if not isinstance(ty, Nat) or name not in snap.store:
                    continue
                expected = interpreter.index_value(ty.index, snap.valuation)
                if expected is not None and snap.store[name] != expected:
                    violations.append(IndexViolation(inputs, snap.span, name, expected, snap.store[name]))
    return violations
