"""
Typechecker de Loop^ω: juicios Γ;Ω ⊢ e : ψ y Γ;Ω ⊢ s ▷ Ω′.

Implementa el sistema dependiente imperativo (tipado pseudo-dinámico de
las variables mutables, regla del for con invariante explícito) y las
reglas de control de etiquetas y saltos. La igualdad de tipos es módulo
E; las obligaciones de la lógica de Hoare embebida se registran en un
ObligationLedger a medida que se recorre el programa.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Type

from ..config.settings import Config
from ..errors import (
    LoopwError, CheckError, TypeMismatch, FootprintViolation,
    InvariantEntryMismatch, InvariantPreservationMismatch, NotALabel,
    ImpureExpr, UseBeforeAssign, NonDataMuteAssertion, RecursiveProcedure,
    UnboundName,
)
from ..index.entailment import Entailment, is_data_mute
from ..index.rewriting import EqSystem, ProofStatus, refuted, terms_equal, unproven
from ..syntax.ast import (
    Span, IVar, Zero, Succ, IndexTerm, Truth, Eq, IndexFormula, conjoin,
    Nat, Proc, Exists, EqTy, LabelTy, Ty,
    Var, ZeroExpr, SuccExpr, Pack, ProcLit, LabelRef, Expr,
    Skip, Assign, Call, For, LabelBlock, Jump, Claim, Unpack, Stmt, Seq,
    Program, add_succ, peel_succ_expr,
)
from ..syntax.printer import show_formula, show_type
from ..syntax.substitution import (
    FreshNames, instantiate, subst_formula, subst_ty, type_vars,
)
from ..hoare.obligations import Obligation, ObligationLedger, closed_implication
from ..analytics.dependency_graph import DependencyAnalyzer
from .context import Context, SeqResult, UNINIT, _Uninit
from .diagnostics import Diagnostic, Severity

logger = logging.getLogger('LoopW.TypeChecker')

EXPR_TYPES = (Var, ZeroExpr, SuccExpr, Pack, ProcLit, LabelRef)


@dataclass
class CheckReport:
    """Resultado de comprobar un programa completo."""
    diagnostics: List[Diagnostic] = field(default_factory=list)
    obligations: List[Obligation] = field(default_factory=list)

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def refuted(self) -> List[Obligation]:
        return [o for o in self.obligations if o.status.refuted]

    @property
    def unproven(self) -> List[Obligation]:
        return [o for o in self.obligations if not o.status.proven and not o.status.refuted]

    def ok(self, strict: bool = False) -> bool:
        if self.errors or self.refuted:
            return False
        return not (strict and self.unproven)

    def obligation_diagnostics(self) -> List[Diagnostic]:
        """REFUTED como error, UNPROVEN como aviso."""
        result = []
        for ob in self.obligations:
            if ob.status.proven:
                continue
            severity = Severity.ERROR if ob.status.refuted else Severity.WARNING
            result.append(Diagnostic(severity, ob.proc, ob.span, ob.rule,
                                     f"obligación {ob.status}: {show_formula(ob.goal)}"))
        return result


class TypeChecker:
    """
    Comprobador de tipos con ranura de aserción y registro de obligaciones.
    """

    def __init__(self, program: Program, eqs: Optional[EqSystem] = None,
                 config: Optional[Config] = None):
        """
        Inicializa el checker.

        Args:
            program: Programa bien formado
            eqs: Sistema de ecuaciones (por defecto, el del programa)
            config: Configuración (step_cap, bound, max_valuations, discharge)
        """
        self.config = config or Config()
        self.program = program
        self.eqs = eqs or EqSystem.from_program(program, self.config.get('step_cap'))
        self.fresh = FreshNames()
        self.entailment = Entailment(self.eqs, self.config.get('bound'),
                                     self.config.get('max_valuations'), self.fresh)
        self.ledger = ObligationLedger(self.entailment, self.config.get('discharge'))
        # Ω estático antes de cada sentencia (para la cabeza de los for: Ω del invariante)
        self.static_omega: Dict[Span, Dict[str, Ty]] = {}

    # ==================== IGUALDAD MÓDULO E ====================

    def index_equal(self, ctx: Context, t1: IndexTerm, t2: IndexTerm) -> ProofStatus:
        """terms_equal y, si no basta, entails(aserción actual, t1 = t2)."""
        status = terms_equal(t1, t2, self.eqs)
        if status.proven:
            return status
        via = self.entailment.entails([ctx.assertion], Eq(t1, t2))
        if via.proven:
            return via
        return status if status.refuted else via

    def _rename_pair(self, ctx: Context, b1: Tuple[str, ...], b2: Tuple[str, ...], *types) -> Tuple[Tuple[str, ...], dict, dict]:
        avoid = set(ctx.indices) | set(b1) | set(b2)
        for ty in types:
            avoid |= type_vars(ty)
        new = tuple(self.fresh.fresh(b, avoid) for b in b1)
        return new, {b: IVar(n) for b, n in zip(b1, new)}, {b: IVar(n) for b, n in zip(b2, new)}

    def _ty_diff(self, ctx: Context, found, expected: Ty, pending: list) -> Optional[ProofStatus]:
        """None si found ≡ expected; si no, el estado que lo impide."""
        if isinstance(found, _Uninit):
            return unproven('sin asignar')
        if isinstance(found, Nat) and isinstance(expected, Nat):
            status = self.index_equal(ctx, found.index, expected.index)
            return None if status.proven else status
        if isinstance(found, EqTy) and isinstance(expected, EqTy):
            for a, b in ((found.lhs, expected.lhs), (found.rhs, expected.rhs)):
                status = self.index_equal(ctx, a, b)
                if not status.proven:
                    return status
            return None
        if isinstance(found, Proc) and isinstance(expected, Proc):
            if (len(found.binders) != len(expected.binders) or len(found.ins) != len(expected.ins)
                    or len(found.outs) != len(expected.outs)):
                return refuted('aridad distinta')
            new, sf, se = self._rename_pair(ctx, found.binders, expected.binders, found, expected)
            inner = ctx.with_indices(*new)
            for a, b in zip(found.ins + found.outs, expected.ins + expected.outs):
                failure = self._ty_diff(inner, subst_ty(a, sf, self.fresh), subst_ty(b, se, self.fresh), pending)
                if failure is not None:
                    return failure
            fpre, epre = subst_formula(found.pre, sf, self.fresh), subst_formula(expected.pre, se, self.fresh)
            fpost, epost = subst_formula(found.post, sf, self.fresh), subst_formula(expected.post, se, self.fresh)
            if conjoin(fpre) != conjoin(epre):
                pending.append(('proc-pre', closed_implication(new, epre, fpre)))
            if conjoin(fpost) != conjoin(epost):
                pending.append(('proc-post', closed_implication(new, fpost, epost)))
            return None
        if isinstance(found, Exists) and isinstance(expected, Exists):
            if len(found.binders) != len(expected.binders) or len(found.comps) != len(expected.comps):
                return refuted('aridad distinta')
            new, sf, se = self._rename_pair(ctx, found.binders, expected.binders, found, expected)
            inner = ctx.with_indices(*new)
            for a, b in zip(found.comps, expected.comps):
                failure = self._ty_diff(inner, subst_ty(a, sf, self.fresh), subst_ty(b, se, self.fresh), pending)
                if failure is not None:
                    return failure
            return None
        if isinstance(found, LabelTy) and isinstance(expected, LabelTy):
            if len(found.neg_args) != len(expected.neg_args):
                return refuted('aridad distinta')
            for a, b in zip(found.neg_args, expected.neg_args):
                failure = self._ty_diff(ctx, a, b, pending)
                if failure is not None:
                    return failure
            if conjoin(found.assertion) != conjoin(expected.assertion):
                pending.append(('label-assert', closed_implication((), expected.assertion, found.assertion)))
            return None
        return refuted('constructores de tipo distintos')

    def ty_equal(self, ctx: Context, found, expected: Ty) -> bool:
        """Igualdad de tipos sin emitir obligaciones."""
        return self._ty_diff(ctx, found, expected, []) is None

    def require_equal(self, ctx: Context, found, expected: Ty, span: Span,
                      exc: Type[CheckError] = TypeMismatch, what: str = 'tipo',
                      rule: Optional[str] = None) -> None:
        """
        Exige found ≡ expected módulo E.

        Raises:
            exc: Con los tipos impresos; "no se pudo probar" si el motor no decide
        """
        pending: List[Tuple[str, IndexFormula]] = []
        failure = self._ty_diff(ctx, found, expected, pending)
        if failure is not None:
            shown_found = 'sin asignar' if isinstance(found, _Uninit) else show_type(found)
            reason = 'tipos distintos' if failure.refuted else 'no se pudo probar la igualdad de tipos'
            raise exc(f"{what}: {reason}", span, rule,
                      expected=show_type(expected), found=shown_found)
        for ob_rule, goal in pending:
            self.ledger.emit([ctx.assertion], goal, span, ob_rule, ctx.proc)

    # ==================== EXPRESIONES ====================

    def _lookup(self, ctx: Context, name: str, span: Span) -> Ty:
        if name in ctx.omega:
            ty = ctx.omega[name]
            if isinstance(ty, _Uninit):
                raise UseBeforeAssign(f"{name} se lee antes de asignarse", span)
            return ty
        if name in ctx.gamma:
            return ctx.gamma[name]
        if name in ctx.hidden:
            raise FootprintViolation(f"{name} está fuera de la huella del bloque", span)
        raise UnboundName(name, span=span)

    def _mutable_target(self, ctx: Context, name: str, span: Span) -> None:
        if name in ctx.omega:
            return
        if name in ctx.hidden:
            raise FootprintViolation(f"{name} está fuera de la huella del bloque", span)
        if name in ctx.gamma:
            raise TypeMismatch(f"{name} es inmutable", span)
        raise UnboundName(name, span=span)

    def infer_expr(self, ctx: Context, expr: Expr, expected: Optional[Ty] = None) -> Ty:
        """
        Infiere el tipo de una expresión pura.

        Args:
            ctx: Contexto
            expr: Expresión
            expected: Tipo esperado (obligatorio para pack)

        Returns:
            Tipo de la expresión
        """
        span = getattr(expr, 'span', None)
        if not isinstance(expr, EXPR_TYPES):
            raise ImpureExpr(f"expresión impura: {type(expr).__name__}", span)
        if isinstance(expr, Var):
            return self._lookup(ctx, expr.name, expr.span)
        if isinstance(expr, ZeroExpr):
            return Nat(Zero())
        if isinstance(expr, SuccExpr):
            count, base = peel_succ_expr(expr)
            inner = self.infer_expr(ctx, base)
            if not isinstance(inner, Nat):
                raise TypeMismatch("s(_) se aplica a un natural", expr.span,
                                   expected='nat(_)', found=show_type(inner))
            return Nat(add_succ(inner.index, count))
        if isinstance(expr, Pack):
            if expected is None:
                raise TypeMismatch("pack necesita un tipo esperado", expr.span)
            self._check_pack(ctx, expr, expected)
            return expected
        if isinstance(expr, ProcLit):
            self.check_proc_lit(ctx, expr)
            return expr.proc_type()
        ty = ctx.gamma.get(expr.name)
        if not isinstance(ty, LabelTy):
            raise UnboundName(expr.name, f"etiqueta no ligada: {expr.name}", expr.span)
        return ty

    def check_expr(self, ctx: Context, expr: Expr, expected: Ty,
                   what: str = 'argumento', rule: Optional[str] = None) -> None:
        if isinstance(expr, Pack):
            self._check_pack(ctx, expr, expected)
            return
        found = self.infer_expr(ctx, expr)
        self.require_equal(ctx, found, expected, getattr(expr, 'span', None), TypeMismatch, what, rule)

    def _check_pack(self, ctx: Context, pack: Pack, expected: Ty) -> None:
        if not isinstance(expected, Exists):
            raise TypeMismatch("pack donde no se espera un registro", pack.span,
                               expected=show_type(expected), found='exists[..](..)')
        if len(pack.idx_args) != len(expected.binders):
            raise TypeMismatch("número de índices del pack", pack.span,
                               expected=str(len(expected.binders)), found=str(len(pack.idx_args)))
        theta = instantiate(expected.binders, pack.idx_args)
        comps = [subst_ty(c, theta, self.fresh) for c in expected.comps]
        values = [c for c in comps if not isinstance(c, EqTy)]
        if len(pack.comps) != len(values):
            raise TypeMismatch("número de componentes del pack", pack.span,
                               expected=str(len(values)), found=str(len(pack.comps)))
        for expr, ty in zip(pack.comps, values):
            self.check_expr(ctx, expr, ty, 'componente del pack')
        for comp in comps:
            if isinstance(comp, EqTy):
                status = self.index_equal(ctx, comp.lhs, comp.rhs)
                if not status.proven:
                    reason = 'igualdad falsa' if status.refuted else 'no se pudo probar la igualdad'
                    raise TypeMismatch(f"pack: {reason}", pack.span, expected=show_type(comp))

    # ==================== PROCEDIMIENTOS ====================

    def check_proc_lit(self, outer: Context, lit: ProcLit) -> SeqResult:
        """
        Comprueba el cuerpo de un literal de procedimiento.

        El cuerpo ve Γ exterior (clausura) y sus parámetros de entrada; Ω
        son sus parámetros de salida. Las salidas nat(t) empiezan en nat(0).
        """
        for formula in (lit.pre, lit.post):
            if formula is not None and not is_data_mute(formula):
                raise NonDataMuteAssertion("pre/post no es data-mute", lit.span)
        ctx = outer.with_indices(*lit.binders)
        for param in lit.ins:
            ctx.gamma[param.name] = param.ty
        ctx.omega = {p.name: (Nat(Zero()) if isinstance(p.ty, Nat) else UNINIT) for p in lit.outs}
        ctx.declared = {p.name: p.ty for p in lit.outs}
        ctx.hidden = outer.hidden | frozenset(outer.omega)
        ctx.assertion = conjoin(lit.pre)
        result = self.check_seq(ctx, lit.body)
        if result.reachable:
            end = ctx.copy()
            end.assertion = result.assertion
            for param in lit.outs:
                found = result.omega_out[param.name]
                if isinstance(found, _Uninit):
                    raise UseBeforeAssign(f"la salida {param.name} no se asigna", lit.span)
                self.require_equal(end, found, param.ty, lit.span, TypeMismatch,
                                   f"salida {param.name}", 'proc-exit')
            if lit.post is not None:
                self.ledger.emit([result.assertion], lit.post, lit.span, 'post', ctx.proc)
        return result

    # ==================== SENTENCIAS ====================

    def _record(self, ctx: Context, span: Span) -> None:
        self.static_omega[span] = {k: v for k, v in ctx.omega.items() if not isinstance(v, _Uninit)}

    def check_seq(self, ctx: Context, seq: Seq, expected: Optional[Dict[str, Ty]] = None) -> SeqResult:
        """
        Γ;Ω ⊢ s ▷ Ω′: encadena Ω de izquierda a derecha.

        Args:
            ctx: Contexto de entrada (no se modifica)
            seq: Secuencia de sentencias
            expected: Ω′ esperado (opcional), comparado módulo E

        Returns:
            SeqResult; tras un salto el resto no se comprueba (inalcanzable)
        """
        ctx = ctx.copy()
        for index, stmt in enumerate(seq):
            if isinstance(stmt, LabelBlock):
                self._record(ctx, stmt.span)
                return self.check_label_block(ctx, stmt, seq[index + 1:], expected)
            if not self.check_stmt(ctx, stmt):
                return SeqResult.unreachable(ctx)
        if expected is not None:
            for name, ty in expected.items():
                self.require_equal(ctx, ctx.omega.get(name, UNINIT), ty, None, TypeMismatch, f"salida {name}")
        return SeqResult(dict(ctx.omega), True, ctx.assertion)

    def check_stmt(self, ctx: Context, stmt: Stmt) -> bool:
        """Comprueba una sentencia actualizando ctx; devuelve si sigue alcanzable."""
        if not isinstance(stmt, For):
            self._record(ctx, stmt.span)
        if isinstance(stmt, Skip):
            return True
        if isinstance(stmt, Assign):
            self._check_assign(ctx, stmt)
            return True
        if isinstance(stmt, Call):
            self._check_call(ctx, stmt)
            return True
        if isinstance(stmt, For):
            updated = self._for(ctx, stmt)
            ctx.omega, ctx.assertion = updated.omega, updated.assertion
            return True
        if isinstance(stmt, Jump):
            self.check_jump(ctx, stmt)
            return False
        if isinstance(stmt, Claim):
            if not is_data_mute(stmt.formula):
                raise NonDataMuteAssertion("la afirmación no es data-mute", stmt.span)
            self.ledger.emit([ctx.assertion], stmt.formula, stmt.span, 'claim', ctx.proc)
            ctx.assertion = stmt.formula
            return True
        if isinstance(stmt, Unpack):
            self._check_unpack(ctx, stmt)
            return True
        raise ImpureExpr(f"no es una sentencia: {type(stmt).__name__}", getattr(stmt, 'span', None))

    def _check_assign(self, ctx: Context, stmt: Assign) -> None:
        self._mutable_target(ctx, stmt.target, stmt.span)
        if isinstance(stmt.value, Pack):
            declared = ctx.declared.get(stmt.target)
            if declared is None:
                raise TypeMismatch(f"{stmt.target} no tiene tipo declarado para pack", stmt.span)
            self._check_pack(ctx, stmt.value, declared)
            ty = declared
        else:
            ty = self.infer_expr(ctx, stmt.value)
        ctx.omega[stmt.target] = ty

    def _check_call(self, ctx: Context, stmt: Call) -> None:
        target = self.infer_expr(ctx, stmt.target)
        if not isinstance(target, Proc):
            raise TypeMismatch("call sobre algo que no es un procedimiento", stmt.span, 'call-target',
                               expected='proc', found=show_type(target))
        if len(stmt.idx_args) != len(target.binders):
            raise TypeMismatch("número de argumentos de índice", stmt.span, 'call-arity',
                               expected=str(len(target.binders)), found=str(len(stmt.idx_args)))
        if len(stmt.in_args) != len(target.ins) or len(stmt.out_vars) != len(target.outs):
            raise TypeMismatch("aridad de la llamada", stmt.span, 'call-arity',
                               expected=f"{len(target.ins)};{len(target.outs)}",
                               found=f"{len(stmt.in_args)};{len(stmt.out_vars)}")
        theta = instantiate(target.binders, stmt.idx_args)
        for arg, ty in zip(stmt.in_args, target.ins):
            self.check_expr(ctx, arg, subst_ty(ty, theta, self.fresh), 'argumento de entrada')
        for name in stmt.out_vars:
            self._mutable_target(ctx, name, stmt.span)
        pre = subst_formula(target.pre, theta, self.fresh)
        if not isinstance(conjoin(pre), Truth):
            self.ledger.emit([ctx.assertion], pre, stmt.span, 'call-pre', ctx.proc)
        for name, ty in zip(stmt.out_vars, target.outs):
            ctx.omega[name] = subst_ty(ty, theta, self.fresh)
        ctx.assume(subst_formula(target.post, theta, self.fresh))

    def _check_unpack(self, ctx: Context, stmt: Unpack) -> None:
        ty = self.infer_expr(ctx, stmt.value)
        if not isinstance(ty, Exists):
            raise TypeMismatch("unpack de algo que no es un registro", stmt.span,
                               expected='exists[..](..)', found=show_type(ty))
        if len(stmt.idx_names) != len(ty.binders):
            raise TypeMismatch("número de índices en unpack", stmt.span,
                               expected=str(len(ty.binders)), found=str(len(stmt.idx_names)))
        theta = {b: IVar(n) for b, n in zip(ty.binders, stmt.idx_names)}
        comps = [subst_ty(c, theta, self.fresh) for c in ty.comps]
        values = [c for c in comps if not isinstance(c, EqTy)]
        if len(stmt.val_names) != len(values):
            raise TypeMismatch("número de componentes en unpack", stmt.span,
                               expected=str(len(values)), found=str(len(stmt.val_names)))
        ctx.indices = ctx.indices + tuple(stmt.idx_names)
        for name, comp in zip(stmt.val_names, values):
            ctx.gamma[name] = comp
        for comp in comps:
            if isinstance(comp, EqTy):
                ctx.assume(Eq(comp.lhs, comp.rhs))

    def _for(self, ctx: Context, stmt: For) -> Context:
        bound = self.infer_expr(ctx, stmt.bound)
        if not isinstance(bound, Nat):
            raise TypeMismatch("la cota del for no es un natural", stmt.span,
                               expected='nat(_)', found=show_type(bound))
        i = stmt.inv_binder
        names = [p.name for p in stmt.footprint]
        for param in stmt.footprint:
            self._mutable_target(ctx, param.name, stmt.span)
        for param in stmt.footprint:
            current = ctx.omega[param.name]
            if isinstance(current, _Uninit):
                raise UseBeforeAssign(f"{param.name} entra en el bucle sin asignar", stmt.span)
            self.require_equal(ctx, current, subst_ty(param.ty, {i: Zero()}, self.fresh), stmt.span,
                               InvariantEntryMismatch, f"entrada del bucle, {param.name}")
        if stmt.assertion is not None:
            self.ledger.emit([ctx.assertion], subst_formula(stmt.assertion, {i: Zero()}, self.fresh),
                             stmt.span, 'for-entry', ctx.proc)

        body = ctx.with_indices(i)
        body.gamma[stmt.counter] = Nat(IVar(i))
        body.omega = {p.name: p.ty for p in stmt.footprint}
        body.declared = dict(body.omega)
        body.hidden = ctx.hidden | (frozenset(ctx.omega) - frozenset(names))
        body.assume(stmt.assertion)
        head = {k: v for k, v in ctx.omega.items() if not isinstance(v, _Uninit)}
        head.update(body.omega)
        self.static_omega[stmt.span] = head

        result = self.check_seq(body, stmt.body)
        if result.reachable:
            end = body.copy()
            end.assertion = result.assertion
            step = {i: Succ(IVar(i))}
            for param in stmt.footprint:
                self.require_equal(end, result.omega_out[param.name], subst_ty(param.ty, step, self.fresh),
                                   stmt.span, InvariantPreservationMismatch,
                                   f"preservación del invariante, {param.name}")
            if stmt.assertion is not None:
                self.ledger.emit([result.assertion], subst_formula(stmt.assertion, step, self.fresh),
                                 stmt.span, 'for-preservation', ctx.proc)

        out = ctx.copy()
        final = {i: bound.index}
        for param in stmt.footprint:
            out.omega[param.name] = subst_ty(param.ty, final, self.fresh)
        out.assume(subst_formula(stmt.assertion, final, self.fresh))
        return out

    def check_for(self, ctx: Context, stmt: For) -> SeqResult:
        """
        Regla del for: entrada σ̄[0/i], cuerpo σ̄(i) ▷ σ̄[s(i)/i], salida σ̄[t/i].

        Raises:
            InvariantEntryMismatch, InvariantPreservationMismatch, FootprintViolation
        """
        out = self._for(ctx, stmt)
        return SeqResult(dict(out.omega), True, out.assertion)

    def _label_block(self, ctx: Context, stmt: LabelBlock) -> Context:
        names = [p.name for p in stmt.footprint]
        for param in stmt.footprint:
            self._mutable_target(ctx, param.name, stmt.span)
        body = ctx.copy()
        body.gamma[stmt.label] = LabelTy(tuple(p.ty for p in stmt.footprint), stmt.assertion)
        body.omega = {n: ctx.omega[n] for n in names}
        body.declared = {p.name: p.ty for p in stmt.footprint}
        body.hidden = ctx.hidden | (frozenset(ctx.omega) - frozenset(names))
        result = self.check_seq(body, stmt.body)
        if result.reachable:
            end = body.copy()
            end.assertion = result.assertion
            for param in stmt.footprint:
                found = result.omega_out[param.name]
                if isinstance(found, _Uninit):
                    raise UseBeforeAssign(f"{param.name} sin asignar al salir del bloque {stmt.label}",
                                          stmt.span)
                self.require_equal(end, found, param.ty, stmt.span, TypeMismatch,
                                   f"salida del bloque {stmt.label}, {param.name}", 'label-exit')
            if stmt.assertion is not None:
                self.ledger.emit([result.assertion], stmt.assertion, stmt.span, 'label-exit', ctx.proc)
        out = ctx.copy()
        for param in stmt.footprint:
            out.omega[param.name] = param.ty
        out.assume(stmt.assertion)
        return out

    def check_label_block(self, ctx: Context, stmt: LabelBlock, rest: Seq = (),
                          expected: Optional[Dict[str, Ty]] = None) -> SeqResult:
        """
        Regla de etiquetas: el cuerpo produce σ̄ (o salta a k); el resto sigue con σ̄.
        """
        return self.check_seq(self._label_block(ctx, stmt), rest, expected)

    def check_jump(self, ctx: Context, stmt: Jump) -> SeqResult:
        """
        Regla del salto: k : ¬σ̄ y ē : σ̄; el final queda inalcanzable.

        Raises:
            NotALabel, TypeMismatch (regla 'jump-arity' o 'jump')
        """
        target = self.infer_expr(ctx, stmt.target)
        if not isinstance(target, LabelTy):
            raise NotALabel("el destino del salto no es una etiqueta", stmt.span,
                            expected='not(..)', found=show_type(target))
        if len(stmt.args) != len(target.neg_args):
            raise TypeMismatch("aridad del salto distinta de la de la etiqueta", stmt.span, 'jump-arity',
                               expected=str(len(target.neg_args)), found=str(len(stmt.args)))
        for arg, ty in zip(stmt.args, target.neg_args):
            self.check_expr(ctx, arg, ty, 'argumento del salto', 'jump')
        if target.assertion is not None:
            self.ledger.emit([ctx.assertion], target.assertion, stmt.span, 'jump-assert', ctx.proc)
        return SeqResult.unreachable(ctx)

    # ==================== PROGRAMA ====================

    def global_context(self, proc: str = '') -> Context:
        """Γ con los procedimientos de nivel superior."""
        gamma = {decl.name: decl.lit.proc_type() for decl in self.program.procs}
        return Context(proc=proc, gamma=gamma)

    def check_program(self) -> CheckReport:
        """
        Comprueba todos los procedimientos.

        Un error aborta solo el procedimiento en curso; se sigue con el siguiente.

        Returns:
            CheckReport con diagnósticos y obligaciones ordenadas por posición
        """
        report = CheckReport()
        analyzer = DependencyAnalyzer(self.program)
        for cycle in analyzer.procedure_cycles():
            decl = self.program.proc(cycle[0])
            error = RecursiveProcedure(f"recursión entre procedimientos: {' -> '.join(cycle)}",
                                       decl.span if decl else None)
            report.diagnostics.append(Diagnostic.from_error(error, cycle[0]))
        for decl in self.program.procs:
            try:
                self.check_proc_lit(self.global_context(decl.name), decl.lit)
                logger.debug(f"Procedimiento {decl.name} comprobado")
            except LoopwError as e:
                logger.info(f"Error de tipos en {decl.name}: {e}")
                report.diagnostics.append(Diagnostic.from_error(e, decl.name))
        report.obligations = self.ledger.sorted()
        return report


def check_program(program: Program, config: Optional[Config] = None) -> CheckReport:
    return TypeChecker(program, config=config).check_program()
