"""
Máquina CEK para el núcleo funcional.

La evaluación usa una pila explícita de marcos, de modo que la
profundidad de los términos traducidos no depende de la pila de Python.
El combustible cuenta pasos de máquina.
"""

import logging
from typing import Any, List, Optional, Tuple

from ..errors import FuelExceeded, StuckTerm
from .core import (
    CVar, CLam, CApp, CZero, CSucc, CNatIter, CTuple, CProj, CPack, CoreTerm,
    Closure, PackValue,
)

logger = logging.getLogger('LoopW.Core')

# Entorno persistente: (nombre, valor, padre) o None
Env = Optional[Tuple[str, Any, Any]]


def _lookup(env: Env, name: str) -> Any:
    while env is not None:
        if env[0] == name:
            return env[1]
        env = env[2]
    raise StuckTerm(f"variable libre en el núcleo: {name}")


def _apply(fn: Any, arg: Any) -> Tuple[CoreTerm, Env]:
    if not isinstance(fn, Closure):
        raise StuckTerm(f"aplicación de un no-función: {fn!r}")
    return fn.body, (fn.param, arg, fn.env)


def eval_core(term: CoreTerm, fuel: int = 2_000_000, env: Env = None) -> Any:
    """
    Evalúa un término cerrado en llamada por valor.

    Args:
        term: Término del núcleo
        fuel: Número máximo de pasos de máquina
        env: Entorno inicial (normalmente vacío)

    Returns:
        int, Closure, tuple o PackValue

    Raises:
        StuckTerm: Si la evaluación se bloquea
        FuelExceeded: Si se agota el combustible
    """
    stack: List[tuple] = []
    control: Optional[CoreTerm] = term
    value: Any = None
    steps = 0

    while True:
        steps += 1
        if steps > fuel:
            raise FuelExceeded(f"núcleo: combustible agotado tras {fuel} pasos")

        if control is not None:
            t, control = control, None
            if isinstance(t, CVar):
                value = _lookup(env, t.name)
            elif isinstance(t, CLam):
                value = Closure(t.param, t.body, env)
            elif isinstance(t, CZero):
                value = 0
            elif isinstance(t, CSucc):
                stack.append(('succ',))
                control = t.arg
            elif isinstance(t, CApp):
                stack.append(('arg', t.arg, env))
                control = t.fn
            elif isinstance(t, (CTuple, CPack)):
                if not t.items:
                    value = PackValue() if isinstance(t, CPack) else ()
                else:
                    stack.append(('items', t, 1, (), env))
                    control = t.items[0]
            elif isinstance(t, CProj):
                stack.append(('proj', t.index))
                control = t.tup
            elif isinstance(t, CNatIter):
                stack.append(('iter-base', t.base, t.step, env))
                control = t.bound
            else:
                raise StuckTerm(f"término desconocido: {t!r}")
            continue

        if not stack:
            logger.debug(f"eval_core: {steps} pasos")
            return value

        frame = stack.pop()
        kind = frame[0]
        if kind == 'succ':
            if not isinstance(value, int):
                raise StuckTerm(f"succ de un no-numeral: {value!r}")
            value = value + 1
        elif kind == 'arg':
            stack.append(('call', value))
            control, env = frame[1], frame[2]
        elif kind == 'call':
            control, env = _apply(frame[1], value)
        elif kind == 'items':
            _, node, pos, acc, saved = frame
            acc = acc + (value,)
            if pos < len(node.items):
                stack.append(('items', node, pos + 1, acc, saved))
                control, env = node.items[pos], saved
            else:
                value = PackValue(acc) if isinstance(node, CPack) else acc
                env = saved
        elif kind == 'proj':
            if not isinstance(value, tuple) or frame[1] >= len(value):
                raise StuckTerm(f"proyección {frame[1]} de {value!r}")
            value = value[frame[1]]
        elif kind == 'iter-base':
            if not isinstance(value, int):
                raise StuckTerm(f"natiter sobre un no-numeral: {value!r}")
            stack.append(('iter-step', value, frame[2], frame[3]))
            control, env = frame[1], frame[3]
        elif kind == 'iter-step':
            count, step, saved = frame[1], frame[2], frame[3]
            stack.append(('iter-fn', count, value))
            control, env = step, saved
        elif kind == 'iter-fn':
            count, acc = frame[1], frame[2]
            if count == 0:
                value = acc
            else:
                stack.append(('iter-more', value, count - 1))
                control, env = _apply(value, acc)
        elif kind == 'iter-more':
            step_fn, remaining = frame[1], frame[2]
            if remaining > 0:
                stack.append(('iter-more', step_fn, remaining - 1))
                control, env = _apply(step_fn, value)
        else:
            raise StuckTerm(f"marco desconocido: {kind}")
