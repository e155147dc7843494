"""
Intérprete directo (big-step) de Loop^ω con desenrollado de etiquetas.

Un salto es una excepción que atrapa el bloque `label` dueño de la marca;
si la marca ya no está viva se lanza EscapedLabel. Las llamadas pasan los
argumentos de entrada por valor y escriben los de salida al volver.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Set

from ..errors import EscapedLabel, FuelExceeded, LoopwError, StepCapExceeded
from ..index.rewriting import EqSystem
from ..syntax.ast import (
    Span, IVar, IndexTerm, Nat,
    Var, ZeroExpr, SuccExpr, Pack, ProcLit, LabelRef, Expr,
    Skip, Assign, Call, For, LabelBlock, Jump, Claim, Unpack, Stmt, Seq,
    Program, numeral, numeral_value, peel_succ_expr,
)
from ..syntax.substitution import subst_term, term_vars
from .values import ProcValue, Packed, LabelTag, render

logger = logging.getLogger('LoopW.Runtime')


class _JumpSignal(Exception):
    def __init__(self, tag: LabelTag, values: List[Any]):
        super().__init__(str(tag))
        self.tag = tag
        self.values = values


@dataclass
class Frame:
    """Marco de ejecución: inmutables, almacén mutable y valoración de índices."""
    env: Dict[str, Any]
    store: Dict[str, Any]
    valuation: Dict[str, int]
    proc: str

    def child(self, **bindings) -> 'Frame':
        env = dict(self.env)
        env.update(bindings)
        return Frame(env, self.store, dict(self.valuation), self.proc)


@dataclass(frozen=True)
class Snapshot:
    """Estado del almacén antes de una sentencia (o en la cabeza de un for)."""
    span: Span
    proc: str
    store: Dict[str, Any] = field(hash=False)
    valuation: Dict[str, int] = field(hash=False)

    def rendered(self) -> Dict[str, str]:
        return {name: render(v) for name, v in self.store.items() if v is not None}


class Interpreter:
    """
    Ejecuta programas Loop^ω bien tipados.
    """

    def __init__(self, program: Program, eqs: Optional[EqSystem] = None,
                 fuel: int = 2_000_000, record: bool = False):
        """
        Inicializa el intérprete.

        Args:
            program: Programa a ejecutar
            eqs: Ecuaciones de E (solo para la valoración de índices de la traza)
            fuel: Número máximo de sentencias ejecutadas
            record: Si True, guarda instantáneas del almacén
        """
        self.program = program
        self.eqs = eqs if eqs is not None else EqSystem.from_program(program)
        self.fuel = fuel
        self.record = record
        self.snapshots: List[Snapshot] = []
        self._live: Set[int] = set()
        self._steps = 0

    # ==================== AUXILIARES ====================

    def _tick(self, span: Span) -> None:
        self._steps += 1
        if self._steps > self.fuel:
            raise FuelExceeded(f"combustible agotado tras {self.fuel} pasos", span)

    def _snapshot(self, frame: Frame, span: Span) -> None:
        if self.record:
            self.snapshots.append(Snapshot(span, frame.proc, dict(frame.store), dict(frame.valuation)))

    def index_value(self, term: IndexTerm, valuation: Dict[str, int]) -> Optional[int]:
        """Valor numérico de un índice bajo la valoración, o None si está abierto."""
        if not term_vars(term) <= set(valuation):
            return None
        closed = subst_term(term, {name: numeral(n) for name, n in valuation.items()})
        try:
            return numeral_value(self.eqs.normalize(closed))
        except StepCapExceeded:
            return None

    def _bind_indices(self, frame: Frame, names: Sequence[str], values: Sequence[Optional[int]]) -> None:
        for name, value in zip(names, values):
            if value is None:
                frame.valuation.pop(name, None)
            else:
                frame.valuation[name] = value

    # ==================== EXPRESIONES ====================

    def eval_expr(self, frame: Frame, expr: Expr) -> Any:
        if isinstance(expr, Var):
            if expr.name in frame.store:
                return frame.store[expr.name]
            return frame.env[expr.name]
        if isinstance(expr, ZeroExpr):
            return 0
        if isinstance(expr, SuccExpr):
            count, base = peel_succ_expr(expr)
            return self.eval_expr(frame, base) + count
        if isinstance(expr, Pack):
            comps = tuple(self.eval_expr(frame, c) for c in expr.comps)
            indices = tuple(self.index_value(t, frame.valuation) for t in expr.idx_args)
            return Packed(comps, indices)
        if isinstance(expr, ProcLit):
            return ProcValue(expr, dict(frame.env), dict(frame.valuation))
        if isinstance(expr, LabelRef):
            return frame.env[expr.name]
        raise LoopwError(f"expresión no evaluable: {expr!r}", getattr(expr, 'span', None))

    # ==================== LLAMADAS ====================

    def call(self, fn: ProcValue, idx_values: Sequence[Optional[int]], args: Sequence[Any]) -> List[Any]:
        """
        Aplica un valor procedimiento.

        Args:
            fn: Procedimiento (clausura)
            idx_values: Valores de los argumentos de índice (None si desconocidos)
            args: Valores de entrada

        Returns:
            Valores finales de los parámetros de salida
        """
        lit = fn.lit
        env = dict(fn.env)
        env.update({p.name: v for p, v in zip(lit.ins, args)})
        store = {p.name: (0 if isinstance(p.ty, Nat) else None) for p in lit.outs}
        frame = Frame(env, store, dict(fn.valuation), frame_name(fn))
        self._bind_indices(frame, lit.binders, idx_values)
        for param, value in zip(lit.ins, args):
            if isinstance(param.ty, Nat) and not term_vars(param.ty.index) - set(lit.binders):
                self._match_index(frame, param.ty.index, value)
        self.exec_seq(frame, lit.body)
        return [store[p.name] for p in lit.outs]

    def _match_index(self, frame: Frame, index: IndexTerm, value: Any) -> None:
        # nat(i) con i binder aún desconocido: el valor determina i
        names = term_vars(index)
        if len(names) == 1 and isinstance(value, int):
            name = next(iter(names))
            if name not in frame.valuation and index == IVar(name):
                frame.valuation[name] = value

    # ==================== SENTENCIAS ====================

    def exec_seq(self, frame: Frame, seq: Seq) -> None:
        for stmt in seq:
            self.exec_stmt(frame, stmt)

    def exec_stmt(self, frame: Frame, stmt: Stmt) -> None:
        self._tick(stmt.span)
        if not isinstance(stmt, For):
            self._snapshot(frame, stmt.span)

        if isinstance(stmt, (Skip, Claim)):
            return
        if isinstance(stmt, Assign):
            frame.store[stmt.target] = self.eval_expr(frame, stmt.value)
            return
        if isinstance(stmt, Call):
            fn = self.eval_expr(frame, stmt.target)
            idx_values = [self.index_value(t, frame.valuation) for t in stmt.idx_args]
            args = [self.eval_expr(frame, e) for e in stmt.in_args]
            results = self.call(fn, idx_values, args)
            for name, value in zip(stmt.out_vars, results):
                frame.store[name] = value
            return
        if isinstance(stmt, For):
            self._exec_for(frame, stmt)
            return
        if isinstance(stmt, LabelBlock):
            self._exec_label(frame, stmt)
            return
        if isinstance(stmt, Jump):
            tag = self.eval_expr(frame, stmt.target)
            values = [self.eval_expr(frame, e) for e in stmt.args]
            if tag.ident not in self._live:
                raise EscapedLabel(tag, stmt.span)
            raise _JumpSignal(tag, values)
        if isinstance(stmt, Unpack):
            packed = self.eval_expr(frame, stmt.value)
            for name, value in zip(stmt.val_names, packed.comps):
                frame.env[name] = value
            self._bind_indices(frame, stmt.idx_names, packed.indices)
            return
        raise LoopwError(f"sentencia desconocida: {stmt!r}", stmt.span)

    def _exec_for(self, frame: Frame, stmt: For) -> None:
        bound = self.eval_expr(frame, stmt.bound)
        for j in range(bound + 1):
            head = frame.child()
            head.valuation[stmt.inv_binder] = j
            self._snapshot(head, stmt.span)
            if j == bound:
                break
            self._tick(stmt.span)
            body = frame.child(**{stmt.counter: j})
            body.valuation[stmt.inv_binder] = j
            self.exec_seq(body, stmt.body)

    def _exec_label(self, frame: Frame, stmt: LabelBlock) -> None:
        tag = LabelTag(stmt.label, len(stmt.footprint))
        self._live.add(tag.ident)
        try:
            self.exec_seq(frame.child(**{stmt.label: tag}), stmt.body)
        except _JumpSignal as signal:
            if signal.tag is not tag:
                raise
            logger.debug(f"Salto a {tag} con {len(signal.values)} valores")
            for param, value in zip(stmt.footprint, signal.values):
                frame.store[param.name] = value
        finally:
            self._live.discard(tag.ident)

    # ==================== PROGRAMA ====================

    def globals(self) -> Dict[str, ProcValue]:
        env: Dict[str, Any] = {}
        for decl in self.program.procs:
            env[decl.name] = ProcValue(decl.lit, env, {})
        return env

    def run(self, inputs: Sequence[int]) -> List[Any]:
        """
        Ejecuta el procedimiento de entrada.

        Args:
            inputs: Numerales de entrada

        Returns:
            Valores de los parámetros de salida

        Raises:
            ValueError: Si el número de entradas no coincide
            EscapedLabel: Si se salta a un bloque ya terminado
            FuelExceeded: Si se agota el combustible
        """
        entry = self.program.entry_proc()
        lit = entry.lit
        if len(inputs) != len(lit.ins):
            raise ValueError(f"{entry.name} espera {len(lit.ins)} entradas, recibidas {len(inputs)}")
        if any(not isinstance(p.ty, Nat) for p in lit.ins):
            raise ValueError(f"{entry.name} tiene entradas que no son naturales")
        fn = self.globals()[entry.name]
        results = self.call(fn, [None] * len(lit.binders), list(inputs))
        logger.info(f"run {entry.name}{tuple(inputs)} -> {[render(v) for v in results]}")
        return results


def frame_name(fn: ProcValue) -> str:
    for name, value in fn.env.items():
        if value is fn:
            return name
    return '<lambda>'


def run(program: Program, inputs: Sequence[int], fuel: int = 2_000_000,
        eqs: Optional[EqSystem] = None) -> List[Any]:
    """Ejecuta el programa y devuelve las salidas."""
    return Interpreter(program, eqs=eqs, fuel=fuel).run(inputs)


def trace(program: Program, inputs: Sequence[int], fuel: int = 2_000_000,
          eqs: Optional[EqSystem] = None) -> List[Snapshot]:
    """Instantáneas del almacén en orden de ejecución."""
    interpreter = Interpreter(program, eqs=eqs, fuel=fuel, record=True)
    interpreter.run(inputs)
    return interpreter.snapshots
