"""
Traducción de Loop^ω al núcleo funcional.

- Variables mutables: estilo de paso de estado. Cada punto del programa
  tiene una variable del núcleo ligada a la tupla de valores de Ω (en el
  orden de los parámetros de salida).
- Etiquetas: paso de continuaciones. Un bloque `label` liga la etiqueta a
  una función que recibe la carga útil, la escribe en la huella y sigue
  tras el bloque; `jump` aplica esa función y descarta la continuación.
- `for`: CNatIter construye la función "iteraciones restantes", de modo
  que el cuerpo sigue en CPS y los saltos pueden salir del bucle.
- Un procedimiento es λa. con a = (tupla de entradas, continuación); la
  continuación recibe la tupla final de salidas.

Los índices y las aserciones se borran: solo importa su aridad.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import UntranslatableEquation, LoopwError
from ..analytics.dependency_graph import DependencyAnalyzer
from ..syntax.ast import (
    IVar, Zero, Succ, App, IndexTerm, Equation,
    Var, ZeroExpr, SuccExpr, Pack, ProcLit, LabelRef, Expr,
    Skip, Assign, Call, For, LabelBlock, Jump, Claim, Unpack, Stmt, Seq,
    Program, peel_succ, peel_succ_expr,
)
from ..syntax.printer import show_term
from .core import (
    CVar, CLam, CApp, CZero, CSucc, CNatIter, CTuple, CProj, CPack, CoreTerm,
    core_numeral, let, show_core, succ_chain,
)

logger = logging.getLogger('LoopW.Translator')

Kont = Callable[[CoreTerm, 'Scope'], CoreTerm]


@dataclass
class Scope:
    """Nombres visibles: inmutables (término del núcleo) y mutables (posición en la tupla)."""
    immut: Dict[str, CoreTerm] = field(default_factory=dict)
    muts: Tuple[str, ...] = ()

    def bind(self, **terms: CoreTerm) -> 'Scope':
        immut = dict(self.immut)
        immut.update(terms)
        return Scope(immut, self.muts)


@dataclass
class CoreProgram:
    """Programa traducido: funciones de E, procedimientos y entrada."""
    functions: List[Tuple[str, CoreTerm]]
    procs: List[Tuple[str, CoreTerm]]
    entry: str
    entry_arity: int

    def entry_application(self, inputs: Sequence[int]) -> CoreTerm:
        """Término cerrado que aplica la entrada a los numerales dados."""
        if len(inputs) != self.entry_arity:
            raise ValueError(f"{self.entry} espera {self.entry_arity} entradas, recibidas {len(inputs)}")
        result = '%r'
        body: CoreTerm = CApp(CVar(self.entry), CTuple((
            CTuple(tuple(core_numeral(n) for n in inputs)),
            CLam(result, CVar(result)),
        )))
        for name, term in reversed(self.procs):
            body = let(name, term, body)
        return body

    def function_application(self, fsym: str, args: Sequence[int]) -> CoreTerm:
        body: CoreTerm = CApp(CVar(function_var(fsym)), CTuple(tuple(core_numeral(n) for n in args)))
        for name, term in reversed(self.functions):
            body = let(function_var(name), term, body)
        return body

    def show(self) -> str:
        lines = [f"(define {function_var(name)} {show_core(term)})" for name, term in self.functions]
        lines += [f"(define {name} {show_core(term)})" for name, term in self.procs]
        lines.append(f"(main {self.entry})")
        return '\n'.join(lines)


def function_var(fsym: str) -> str:
    return f"{fsym}%fn"


# ==================== FUNCIONES DE E ====================

class EquationCompiler:
    """
    Compila las ecuaciones de un símbolo a recursión estructural.
    """

    def __init__(self, program: Program):
        self.program = program
        self.arities = program.arities()
        self._counter = 0

    def _fresh(self, base: str) -> str:
        self._counter += 1
        return f"{base}%{self._counter}"

    def term(self, term: IndexTerm, env: Dict[str, CoreTerm], rec: Optional[Callable] = None) -> CoreTerm:
        if isinstance(term, IVar):
            return env[term.name]
        if isinstance(term, Zero):
            return CZero()
        if isinstance(term, Succ):
            count, base = peel_succ(term)
            return succ_chain(self.term(base, env, rec), count)
        if rec is not None:
            replaced = rec(term)
            if replaced is not None:
                return replaced
        return CApp(CVar(function_var(term.fsym)),
                    CTuple(tuple(self.term(a, env, rec) for a in term.args)))

    @staticmethod
    def _distinct_vars(args: Sequence[IndexTerm]) -> bool:
        names = [a.name for a in args if isinstance(a, IVar)]
        return len(names) == len(args) and len(set(names)) == len(names)

    def _recursion_position(self, eqs: List[Equation], arity: int):
        for pos in range(arity):
            zero_case = succ_case = None
            for eq in eqs:
                args = eq.lhs.args
                others = args[:pos] + args[pos + 1:]
                if not self._distinct_vars(others):
                    continue
                if isinstance(args[pos], Zero) and zero_case is None:
                    zero_case = eq
                elif (isinstance(args[pos], Succ) and isinstance(args[pos].arg, IVar)
                      and succ_case is None and self._distinct_vars(others + (args[pos].arg,))):
                    succ_case = eq
            if zero_case is not None and succ_case is not None:
                return pos, zero_case, succ_case
        return None

    @staticmethod
    def _check_shadowing(fsym: str, eqs: List[Equation], zero_case: Equation, succ_case: Equation) -> None:
        """
        La reescritura aplica la primera ecuación que empareja: una ecuación
        descartada que precede a un caso elegido y se solapa con él cambiaría
        el resultado compilado.

        Raises:
            UntranslatableEquation: Si alguna ecuación descartada tapa un caso elegido
        """
        position = {id(eq): index for index, eq in enumerate(eqs)}
        for index, eq in enumerate(eqs):
            if eq is zero_case or eq is succ_case:
                continue
            for chosen in (zero_case, succ_case):
                if index < position[id(chosen)] and _overlaps(eq.lhs, chosen.lhs):
                    raise UntranslatableEquation(
                        fsym, f"la ecuación {show_term(eq.lhs)} = {show_term(eq.rhs)} se solapa con "
                              f"{show_term(chosen.lhs)} y la precede")

    def compile(self, fsym: str, eqs: List[Equation]) -> CoreTerm:
        """
        Función del núcleo que toma la tupla de argumentos.

        Raises:
            UntranslatableEquation: Si las ecuaciones no son recursión estructural
        """
        arity = self.arities.get(fsym, 0)
        a = self._fresh('args')
        arg_terms = [CProj(CVar(a), j) for j in range(arity)]

        # una primera ecuación con patrones variables siempre es la que reescribe
        eq = eqs[0]
        if self._distinct_vars(eq.lhs.args) and fsym not in _symbols(eq.rhs):
            env = {v.name: arg_terms[j] for j, v in enumerate(eq.lhs.args)}
            return CLam(a, self.term(eq.rhs, env))

        found = self._recursion_position(eqs, arity)
        if found is None:
            raise UntranslatableEquation(fsym, f"las ecuaciones de {fsym} no son recursión estructural sobre un argumento")
        pos, zero_case, succ_case = found
        self._check_shadowing(fsym, eqs, zero_case, succ_case)
        if fsym in _symbols(zero_case.rhs):
            raise UntranslatableEquation(fsym, f"el caso 0 de {fsym} es recursivo")

        others = [j for j in range(arity) if j != pos]
        zero_env = {zero_case.lhs.args[j].name: arg_terms[j] for j in others}
        base = CTuple((CZero(), self.term(zero_case.rhs, zero_env)))

        p = self._fresh('acc')
        pred = succ_case.lhs.args[pos].arg.name
        succ_env = {succ_case.lhs.args[j].name: arg_terms[j] for j in others}
        succ_env[pred] = CProj(CVar(p), 0)
        expected_args = tuple(succ_case.lhs.args[j] if j != pos else IVar(pred) for j in range(arity))

        def recursive_call(term: App) -> Optional[CoreTerm]:
            if term.fsym != fsym:
                return None
            if term.args != expected_args:
                raise UntranslatableEquation(fsym, f"llamada recursiva no estructural en {fsym}")
            return CProj(CVar(p), 1)

        step_body = CTuple((CSucc(CProj(CVar(p), 0)), self.term(succ_case.rhs, succ_env, recursive_call)))
        iterate = CNatIter(arg_terms[pos], base, CLam(p, step_body))
        ignored = len(eqs) - 2
        if ignored:
            logger.debug(f"{fsym}: {ignored} ecuaciones adicionales no intervienen en la compilación")
        return CLam(a, CProj(iterate, 1))


def _overlaps(p: IndexTerm, q: IndexTerm) -> bool:
    """Dos patrones lineales se solapan si algún término cerrado empareja con ambos."""
    pc, p = peel_succ(p)
    qc, q = peel_succ(q)
    if isinstance(p, App) and isinstance(q, App) and pc == qc == 0:
        return (p.fsym == q.fsym and len(p.args) == len(q.args)
                and all(_overlaps(a, b) for a, b in zip(p.args, q.args)))
    if isinstance(p, (IVar, App)) and pc <= qc:
        return True
    if isinstance(q, (IVar, App)) and qc <= pc:
        return True
    return pc == qc and isinstance(p, Zero) and isinstance(q, Zero)


def _symbols(term: IndexTerm) -> set:
    found = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, App):
            found.add(t.fsym)
            stack.extend(t.args)
        elif isinstance(t, Succ):
            stack.append(t.arg)
    return found


def translate_equations(program: Program) -> List[Tuple[str, CoreTerm]]:
    """
    Compila las funciones de E con ecuaciones, dependencias primero.

    Raises:
        UntranslatableEquation: Recursión mutua o ecuaciones no estructurales
    """
    analyzer = DependencyAnalyzer(program)
    groups = analyzer.mutual_recursion()
    if groups:
        raise UntranslatableEquation(groups[0][0], f"recursión mutua entre {', '.join(groups[0])}")
    by_symbol: Dict[str, List[Equation]] = {}
    for eq in program.equations:
        by_symbol.setdefault(eq.lhs.fsym, []).append(eq)
    compiler = EquationCompiler(program)
    return [(fsym, compiler.compile(fsym, by_symbol[fsym]))
            for fsym in analyzer.equation_order() if fsym in by_symbol]


# ==================== PROCEDIMIENTOS ====================

class Translator:
    """
    Traduce procedimientos a términos del núcleo en CPS con paso de estado.
    """

    def __init__(self, program: Program):
        self.program = program
        self._counter = 0

    def fresh(self, base: str) -> str:
        self._counter += 1
        return f"{base}%{self._counter}"

    def _bind(self, value: CoreTerm, base: str, body: Callable[[CoreTerm], CoreTerm]) -> CoreTerm:
        if isinstance(value, CVar):
            return body(value)
        name = self.fresh(base)
        return let(name, value, body(CVar(name)))

    def _update(self, scope: Scope, st: CoreTerm, updates: Dict[str, CoreTerm]) -> CoreTerm:
        return CTuple(tuple(updates.get(name, CProj(st, j)) for j, name in enumerate(scope.muts)))

    # ==================== EXPRESIONES ====================

    def expr(self, expr: Expr, scope: Scope, st: CoreTerm) -> CoreTerm:
        if isinstance(expr, Var):
            if expr.name in scope.muts:
                return CProj(st, scope.muts.index(expr.name))
            return scope.immut[expr.name]
        if isinstance(expr, ZeroExpr):
            return CZero()
        if isinstance(expr, SuccExpr):
            count, base = peel_succ_expr(expr)
            return succ_chain(self.expr(base, scope, st), count)
        if isinstance(expr, Pack):
            return CPack(tuple(self.expr(c, scope, st) for c in expr.comps))
        if isinstance(expr, ProcLit):
            return self.proc(expr, scope.immut)
        if isinstance(expr, LabelRef):
            return scope.immut[expr.name]
        raise LoopwError(f"expresión no traducible: {expr!r}", getattr(expr, 'span', None))

    def proc(self, lit: ProcLit, immut: Dict[str, CoreTerm]) -> CoreTerm:
        """λa. cuerpo, con a = (entradas, continuación)."""
        a = self.fresh('a')
        inside = dict(immut)
        for j, param in enumerate(lit.ins):
            inside[param.name] = CProj(CProj(CVar(a), 0), j)
        scope = Scope(inside, tuple(p.name for p in lit.outs))
        k = self.fresh('k')
        s = self.fresh('s')
        initial = CTuple(tuple(CZero() for _ in lit.outs))
        body = self.seq(lit.body, scope, CVar(s), lambda st, _sc: CApp(CVar(k), st))
        return CLam(a, let(k, CProj(CVar(a), 1), let(s, initial, body)))

    # ==================== SENTENCIAS ====================

    def seq(self, stmts: Seq, scope: Scope, st: CoreTerm, k: Kont) -> CoreTerm:
        if not stmts:
            return k(st, scope)
        head, rest = stmts[0], stmts[1:]
        return self.stmt(head, scope, st, lambda st2, sc2: self.seq(rest, sc2, st2, k))

    def stmt(self, stmt: Stmt, scope: Scope, st: CoreTerm, k: Kont) -> CoreTerm:
        if isinstance(stmt, (Skip, Claim)):
            return k(st, scope)

        if isinstance(stmt, Assign):
            new_state = self._update(scope, st, {stmt.target: self.expr(stmt.value, scope, st)})
            return self._bind(new_state, 's', lambda st2: k(st2, scope))

        if isinstance(stmt, Call):
            r = self.fresh('r')
            updates = {name: CProj(CVar(r), j) for j, name in enumerate(stmt.out_vars)}
            resume = self._bind(self._update(scope, st, updates), 's', lambda st2: k(st2, scope))
            args = CTuple(tuple(self.expr(e, scope, st) for e in stmt.in_args))
            return CApp(self.expr(stmt.target, scope, st), CTuple((args, CLam(r, resume))))

        if isinstance(stmt, Unpack):
            def after(v: CoreTerm) -> CoreTerm:
                bound = {name: CProj(v, j) for j, name in enumerate(stmt.val_names)}
                return k(st, scope.bind(**bound))
            return self._bind(self.expr(stmt.value, scope, st), 'v', after)

        if isinstance(stmt, Jump):
            payload = CTuple(tuple(self.expr(e, scope, st) for e in stmt.args))
            return CApp(self.expr(stmt.target, scope, st), payload)

        if isinstance(stmt, LabelBlock):
            return self._label(stmt, scope, st, k)

        if isinstance(stmt, For):
            return self._for(stmt, scope, st, k)

        raise LoopwError(f"sentencia no traducible: {stmt!r}", stmt.span)

    def _label(self, stmt: LabelBlock, scope: Scope, st: CoreTerm, k: Kont) -> CoreTerm:
        p = self.fresh('p')
        names = [param.name for param in stmt.footprint]
        updates = {name: CProj(CVar(p), j) for j, name in enumerate(names)}
        resume = self._bind(self._update(scope, st, updates), 's', lambda st2: k(st2, scope))
        kv = self.fresh(stmt.label)
        inner = scope.bind(**{stmt.label: CVar(kv)})

        def normal_exit(st_b: CoreTerm, _sc: Scope) -> CoreTerm:
            payload = CTuple(tuple(CProj(st_b, scope.muts.index(n)) for n in names))
            return CApp(CVar(kv), payload)

        return let(kv, CLam(p, resume), self.seq(stmt.body, inner, st, normal_exit))

    def _for(self, stmt: For, scope: Scope, st: CoreTerm, k: Kont) -> CoreTerm:
        q0 = self.fresh('q')
        done = self._bind(CProj(CVar(q0), 1), 's', lambda st2: k(st2, scope))
        base = CLam(q0, done)

        remaining = self.fresh('R')
        q = self.fresh('q')
        counter = self.fresh(stmt.counter)
        inner = scope.bind(**{stmt.counter: CVar(counter)})

        def next_iteration(st_b: CoreTerm, _sc: Scope) -> CoreTerm:
            return CApp(CVar(remaining), CTuple((CSucc(CVar(counter)), st_b)))

        body = let(counter, CProj(CVar(q), 0),
                   self._bind(CProj(CVar(q), 1), 's',
                              lambda st_b: self.seq(stmt.body, inner, st_b, next_iteration)))
        step = CLam(remaining, CLam(q, body))
        loop = CNatIter(self.expr(stmt.bound, scope, st), base, step)
        return CApp(loop, CTuple((CZero(), st)))


def translate(program: Program) -> CoreProgram:
    """
    Traduce un programa bien tipado.

    Args:
        program: Programa (las obligaciones pendientes no afectan)

    Returns:
        CoreProgram con funciones de E, procedimientos en orden topológico y entrada

    Raises:
        UntranslatableEquation: Si alguna función de E no es recursión estructural
    """
    functions = translate_equations(program)
    translator = Translator(program)
    immut = {decl.name: CVar(decl.name) for decl in program.procs}
    procs = []
    for name in DependencyAnalyzer(program).procedure_order():
        procs.append((name, translator.proc(program.proc(name).lit, immut)))
    entry = program.entry_proc()
    logger.info(f"Traducidos {len(functions)} símbolos y {len(procs)} procedimientos (entrada {entry.name})")
    return CoreProgram(functions, procs, entry.name, len(entry.lit.ins))
