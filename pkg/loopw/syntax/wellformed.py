"""
Comprobación de buena formación de programas Loop^ω.

Recorre el programa una vez y devuelve la lista de diagnósticos: firma y
ecuaciones, ámbitos de variables de índice y de valor, huellas (footprints),
posición de los tipos igualdad, aserciones data-mute y la estratificación
de pureza (ningún Jump ni LabelBlock dentro de una expresión salvo en el
cuerpo de un literal de procedimiento).
"""

import logging
from dataclasses import dataclass, field, replace
from typing import FrozenSet, List, Optional

from .ast import (
    Span, NO_SPAN, IVar, Zero, App, IndexTerm,
    Eq, And, Implies, Forall,
    Nat, Proc, Exists, EqTy, LabelTy, Ty,
    Var, ZeroExpr, Pack, ProcLit, LabelRef,
    Skip, Assign, Call, For, LabelBlock, Jump, Claim, Unpack,
    Program, peel_succ, peel_succ_expr,
)
from .printer import show_term
from .substitution import term_vars
from ..checker.diagnostics import Diagnostic, error
from ..index.entailment import is_data_mute

logger = logging.getLogger('LoopW.WellFormed')


@dataclass(frozen=True)
class _Scope:
    """Nombres visibles en un punto del programa."""
    indices: FrozenSet[str] = frozenset()
    values: FrozenSet[str] = frozenset()      # Γ: inmutables y etiquetas
    labels: FrozenSet[str] = frozenset()
    mutables: FrozenSet[str] = frozenset()    # Ω
    hidden: FrozenSet[str] = frozenset()      # Ω exterior, lo informa el typechecker

    def names(self) -> FrozenSet[str]:
        return self.values | self.mutables


@dataclass
class _Walker:
    program: Program
    diagnostics: List[Diagnostic] = field(default_factory=list)
    proc: str = ''

    def report(self, span: Optional[Span], rule: str, message: str) -> None:
        self.diagnostics.append(error(self.proc, span or NO_SPAN, rule, message))

    # ==================== FIRMA Y ECUACIONES ====================

    def check_signature(self) -> None:
        seen = set()
        for fsym, arity in self.program.signature:
            if fsym in seen:
                self.report(None, 'signature', f"símbolo declarado dos veces: {fsym}")
            if arity < 0:
                self.report(None, 'signature', f"aridad negativa para {fsym}")
            seen.add(fsym)

    def check_equations(self) -> None:
        arities = self.program.arities()
        for eq in self.program.equations:
            if not isinstance(eq.lhs, App) or eq.lhs.fsym not in arities:
                self.report(eq.span, 'equation', f"lado izquierdo no definible: {show_term(eq.lhs)}")
                continue
            for arg in eq.lhs.args:
                if not _is_pattern(arg):
                    self.report(eq.span, 'equation',
                                f"patrón no constructor en {show_term(eq.lhs)}: {show_term(arg)}")
            self.check_term(eq.lhs, None, eq.span)
            self.check_term(eq.rhs, None, eq.span)
            extra = term_vars(eq.rhs) - term_vars(eq.lhs)
            if extra:
                self.report(eq.span, 'equation',
                            f"variables del lado derecho ausentes del izquierdo: {', '.join(sorted(extra))}")

    # ==================== TÉRMINOS, FÓRMULAS Y TIPOS ====================

    def check_term(self, term: IndexTerm, scope: Optional[_Scope], span: Span) -> None:
        """Aridad y ámbito; scope None desactiva el ámbito (ecuaciones)."""
        _, term = peel_succ(term)
        if isinstance(term, IVar):
            if scope is not None and term.name not in scope.indices:
                self.report(span, 'unbound', f"variable de índice no ligada: {term.name}")
        elif isinstance(term, App):
            arity = self.program.arities().get(term.fsym)
            if arity is None:
                self.report(span, 'arity', f"símbolo de función no declarado: {term.fsym}")
            elif arity != len(term.args):
                self.report(span, 'arity', f"{term.fsym} espera {arity} argumentos, recibe {len(term.args)}")
            for arg in term.args:
                self.check_term(arg, scope, span)
        elif not isinstance(term, Zero):
            self.report(span, 'syntax', f"no es un término de índice: {term!r}")

    def bind_indices(self, scope: _Scope, names, span: Span) -> _Scope:
        seen = set()
        for name in names:
            if name in scope.indices or name in seen:
                self.report(span, 'shadowing', f"el ligador de índice {name} oculta otro del mismo nombre")
            seen.add(name)
        return replace(scope, indices=scope.indices | frozenset(names))

    def check_formula(self, formula, scope: _Scope, span: Span) -> None:
        if formula is None:
            return
        if not is_data_mute(formula):
            self.report(span, 'data-mute', "la aserción no es data-mute")
            return
        if isinstance(formula, Eq):
            self.check_term(formula.lhs, scope, span)
            self.check_term(formula.rhs, scope, span)
        elif isinstance(formula, (And, Implies)):
            self.check_formula(formula.left, scope, span)
            self.check_formula(formula.right, scope, span)
        elif isinstance(formula, Forall):
            self.check_formula(formula.body, self.bind_indices(scope, (formula.var,), span), span)

    def check_type(self, ty: Ty, scope: _Scope, span: Span, in_record: bool = False) -> None:
        if isinstance(ty, Nat):
            self.check_term(ty.index, scope, span)
        elif isinstance(ty, EqTy):
            if not in_record:
                self.report(span, 'eq-position', "un tipo igualdad solo puede ser componente de un exists")
            self.check_term(ty.lhs, scope, span)
            self.check_term(ty.rhs, scope, span)
        elif isinstance(ty, Proc):
            inner = self.bind_indices(scope, ty.binders, span)
            for t in ty.ins + ty.outs:
                self.check_type(t, inner, span)
            self.check_formula(ty.pre, inner, span)
            self.check_formula(ty.post, inner, span)
        elif isinstance(ty, Exists):
            inner = self.bind_indices(scope, ty.binders, span)
            for t in ty.comps:
                self.check_type(t, inner, span, in_record=True)
        elif isinstance(ty, LabelTy):
            for t in ty.neg_args:
                self.check_type(t, scope, span)
            self.check_formula(ty.assertion, scope, span)
        else:
            self.report(span, 'syntax', f"no es un tipo: {ty!r}")

    def check_params(self, params, scope: _Scope, span: Span, what: str) -> None:
        seen = set()
        for param in params:
            if param.name in seen:
                self.report(span, 'footprint' if what == 'huella' else 'duplicate',
                            f"nombre repetido en {what}: {param.name}")
            seen.add(param.name)
            self.check_type(param.ty, scope, span)

    # ==================== EXPRESIONES ====================

    def check_expr(self, expr, scope: _Scope) -> None:
        _, expr = peel_succ_expr(expr)
        span = getattr(expr, 'span', NO_SPAN)
        if isinstance(expr, (Jump, LabelBlock)) or not hasattr(expr, 'span'):
            self.report(span, 'purity', "expresión impura: salto o bloque de etiqueta dentro de una expresión")
            return
        if isinstance(expr, Var):
            if expr.name not in scope.names() | scope.hidden:
                self.report(span, 'unbound', f"nombre no ligado: {expr.name}")
        elif isinstance(expr, LabelRef):
            if expr.name not in scope.labels:
                self.report(span, 'unbound', f"etiqueta no ligada: {expr.name}")
        elif isinstance(expr, Pack):
            for t in expr.idx_args:
                self.check_term(t, scope, span)
            for comp in expr.comps:
                self.check_expr(comp, scope)
        elif isinstance(expr, ProcLit):
            self.check_proc_lit(expr, scope)
        elif not isinstance(expr, ZeroExpr):
            self.report(span, 'purity', f"expresión impura: {type(expr).__name__}")

    def check_proc_lit(self, lit: ProcLit, outer: _Scope) -> None:
        """Un literal cierra sobre Γ (índices, valores, etiquetas) pero no sobre Ω."""
        scope = self.bind_indices(replace(outer, mutables=frozenset(), hidden=outer.hidden | outer.mutables),
                                   lit.binders, lit.span)
        self.check_params(lit.ins + lit.outs, scope, lit.span, 'parámetros')
        self.check_formula(lit.pre, scope, lit.span)
        self.check_formula(lit.post, scope, lit.span)
        ins = frozenset(p.name for p in lit.ins)
        outs = frozenset(p.name for p in lit.outs)
        for name in sorted((ins | outs) & outer.values):
            self.report(lit.span, 'duplicate', f"el parámetro {name} oculta un nombre inmutable")
        scope = replace(scope, values=scope.values | ins, mutables=outs)
        self.check_seq(lit.body, scope)

    # ==================== SENTENCIAS ====================

    def check_seq(self, seq, scope: _Scope) -> None:
        for stmt in seq:
            scope = self.check_stmt(stmt, scope)

    def check_stmt(self, stmt, scope: _Scope) -> _Scope:
        span = stmt.span
        if isinstance(stmt, Skip):
            pass
        elif isinstance(stmt, Assign):
            if stmt.target not in scope.mutables | scope.hidden:
                self.report(span, 'unbound', f"asignación a una variable no mutable: {stmt.target}")
            self.check_expr(stmt.value, scope)
        elif isinstance(stmt, Call):
            self.check_expr(stmt.target, scope)
            for t in stmt.idx_args:
                self.check_term(t, scope, span)
            for arg in stmt.in_args:
                self.check_expr(arg, scope)
            if len(set(stmt.out_vars)) != len(stmt.out_vars):
                self.report(span, 'duplicate', "variables de salida repetidas en la llamada")
            for name in stmt.out_vars:
                if name not in scope.mutables | scope.hidden:
                    self.report(span, 'unbound', f"salida a una variable no mutable: {name}")
        elif isinstance(stmt, For):
            self.check_expr(stmt.bound, scope)
            self.check_footprint(stmt.footprint, scope, span)
            inner = self.bind_indices(scope, (stmt.inv_binder,), span)
            self.check_params(stmt.footprint, inner, span, 'huella')
            self.check_formula(stmt.assertion, inner, span)
            if stmt.counter in scope.names():
                self.report(span, 'duplicate', f"el contador {stmt.counter} oculta otro nombre")
            body_scope = replace(inner, values=inner.values | {stmt.counter},
                                 mutables=frozenset(p.name for p in stmt.footprint),
                                 hidden=scope.hidden | scope.mutables)
            self.check_seq(stmt.body, body_scope)
        elif isinstance(stmt, LabelBlock):
            self.check_footprint(stmt.footprint, scope, span)
            self.check_params(stmt.footprint, scope, span, 'huella')
            self.check_formula(stmt.assertion, scope, span)
            if stmt.label in scope.names():
                self.report(span, 'duplicate', f"la etiqueta {stmt.label} oculta otro nombre")
            body_scope = replace(scope, values=scope.values | {stmt.label},
                                 labels=scope.labels | {stmt.label},
                                 mutables=frozenset(p.name for p in stmt.footprint),
                                 hidden=scope.hidden | scope.mutables)
            self.check_seq(stmt.body, body_scope)
        elif isinstance(stmt, Jump):
            self.check_expr(stmt.target, scope)
            for arg in stmt.args:
                self.check_expr(arg, scope)
        elif isinstance(stmt, Claim):
            self.check_formula(stmt.formula, scope, span)
        elif isinstance(stmt, Unpack):
            self.check_expr(stmt.value, scope)
            names = set(stmt.val_names)
            if len(names) != len(stmt.val_names):
                self.report(span, 'duplicate', "nombres repetidos en unpack")
            for name in sorted(names & scope.names()):
                self.report(span, 'duplicate', f"unpack oculta el nombre {name}")
            scope = self.bind_indices(scope, stmt.idx_names, span)
            scope = replace(scope, values=scope.values | names)
        else:
            self.report(getattr(stmt, 'span', None), 'syntax', f"no es una sentencia: {stmt!r}")
        return scope

    def check_footprint(self, footprint, scope: _Scope, span: Span) -> None:
        for param in footprint:
            if param.name not in scope.mutables:
                self.report(span, 'footprint', f"{param.name} no es una variable mutable en este punto")

    # ==================== PROGRAMA ====================

    def run(self) -> List[Diagnostic]:
        self.check_signature()
        self.check_equations()
        names = [decl.name for decl in self.program.procs]
        globals_ = frozenset(names)
        seen = set()
        for decl in self.program.procs:
            self.proc = decl.name
            if decl.name in seen:
                self.report(decl.span, 'duplicate', f"procedimiento declarado dos veces: {decl.name}")
            seen.add(decl.name)
            self.check_proc_lit(decl.lit, _Scope(values=globals_))
        return self.diagnostics


def _is_pattern(term: IndexTerm) -> bool:
    return isinstance(peel_succ(term)[1], (IVar, Zero))


def well_formed(program: Program) -> List[Diagnostic]:
    """
    Comprueba las invariantes sintácticas y de ámbito de un programa.

    Args:
        program: Programa parseado

    Returns:
        Lista de diagnósticos (vacía si el programa está bien formado)
    """
    diagnostics = _Walker(program).run()
    logger.debug(f"Buena formación: {len(diagnostics)} diagnósticos")
    return diagnostics
