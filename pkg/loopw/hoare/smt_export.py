"""
Exportación de obligaciones a SMT-LIB2.

Nat se declara como tipo algebraico con constructores zero y succ; cada
función de E es una función no interpretada restringida por sus
ecuaciones cuantificadas universalmente; el objetivo va negado antes de
(check-sat). Es solo exportación: los veredictos no se leen de vuelta.
Con z3 instalado el texto lo genera z3; sin él se escribe directamente.
"""

import logging
import re
from collections import defaultdict
from pathlib import Path
from typing import Dict, List

from ..syntax.ast import (
    IVar, Zero, Succ, App, IndexTerm, Truth, Eq, And, Implies, Forall, IndexFormula, Program, peel_succ,
)
from ..syntax.substitution import formula_vars, term_vars
from .obligations import Obligation

try:
    import z3
    Z3_AVAILABLE = True
except ImportError:
    Z3_AVAILABLE = False

logger = logging.getLogger('LoopW.SmtExport')

_SIMPLE_SYMBOL = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _sym(name: str) -> str:
    return name if _SIMPLE_SYMBOL.match(name) else f"|{name}|"


class SmtExporter:
    """
    Traduce obligaciones a ficheros .smt2.
    """

    def __init__(self, program: Program, logic: str = 'ALL', use_z3: bool = True):
        """
        Inicializa el exportador.

        Args:
            program: Programa (aporta firma y ecuaciones)
            logic: Lógica declarada con set-logic
            use_z3: Usar z3 si está disponible
        """
        self.program = program
        self.logic = logic
        self.use_z3 = use_z3 and Z3_AVAILABLE

    # ==================== TEXTO DIRECTO ====================

    def _term(self, term: IndexTerm) -> str:
        if isinstance(term, IVar):
            return _sym(term.name)
        if isinstance(term, Zero):
            return 'zero'
        if isinstance(term, Succ):
            count, base = peel_succ(term)
            return "(succ " * count + self._term(base) + ")" * count
        if not term.args:
            return _sym(term.fsym)
        return f"({_sym(term.fsym)} {' '.join(self._term(a) for a in term.args)})"

    def _formula(self, formula: IndexFormula) -> str:
        if isinstance(formula, Truth):
            return 'true'
        if isinstance(formula, Eq):
            return f"(= {self._term(formula.lhs)} {self._term(formula.rhs)})"
        if isinstance(formula, And):
            return f"(and {self._formula(formula.left)} {self._formula(formula.right)})"
        if isinstance(formula, Implies):
            return f"(=> {self._formula(formula.left)} {self._formula(formula.right)})"
        return f"(forall (({_sym(formula.var)} Nat)) {self._formula(formula.body)})"

    def _text(self, obligation: Obligation) -> str:
        lines = [f"(set-logic {self.logic})",
                 "(declare-datatypes ((Nat 0)) (((zero) (succ (pred Nat)))))"]
        for fsym, arity in self.program.signature:
            lines.append(f"(declare-fun {_sym(fsym)} ({' '.join(['Nat'] * arity)}) Nat)")
        for eq in self.program.equations:
            body = f"(= {self._term(eq.lhs)} {self._term(eq.rhs)})"
            names = sorted(term_vars(eq.lhs))
            if names:
                binders = ' '.join(f"({_sym(n)} Nat)" for n in names)
                body = f"(forall ({binders}) {body})"
            lines.append(f"(assert {body})")
        free = set(formula_vars(obligation.goal))
        for hyp in obligation.hyps:
            free |= formula_vars(hyp)
        for name in sorted(free):
            lines.append(f"(declare-const {_sym(name)} Nat)")
        for hyp in obligation.hyps:
            lines.append(f"(assert {self._formula(hyp)})")
        lines.append(f"(assert (not {self._formula(obligation.goal)}))")
        lines.append("(check-sat)")
        return '\n'.join(lines) + '\n'

    # ==================== Z3 ====================

    def _z3_text(self, obligation: Obligation) -> str:
        nat = z3.Datatype('Nat')
        nat.declare('zero')
        nat.declare('succ', ('pred', nat))
        nat = nat.create()
        funcs = {f: z3.Function(f, *([nat] * arity), nat) for f, arity in self.program.signature}

        def term(t: IndexTerm):
            if isinstance(t, IVar):
                return z3.Const(t.name, nat)
            if isinstance(t, Zero):
                return nat.zero
            if isinstance(t, Succ):
                count, base = peel_succ(t)
                result = term(base)
                for _ in range(count):
                    result = nat.succ(result)
                return result
            return funcs[t.fsym](*[term(a) for a in t.args])

        def formula(f: IndexFormula):
            if isinstance(f, Truth):
                return z3.BoolVal(True)
            if isinstance(f, Eq):
                return term(f.lhs) == term(f.rhs)
            if isinstance(f, And):
                return z3.And(formula(f.left), formula(f.right))
            if isinstance(f, Implies):
                return z3.Implies(formula(f.left), formula(f.right))
            return z3.ForAll([z3.Const(f.var, nat)], formula(f.body))

        solver = z3.Solver()
        for eq in self.program.equations:
            names = sorted(term_vars(eq.lhs))
            axiom = term(eq.lhs) == term(eq.rhs)
            solver.add(z3.ForAll([z3.Const(n, nat) for n in names], axiom) if names else axiom)
        for hyp in obligation.hyps:
            solver.add(formula(hyp))
        solver.add(z3.Not(formula(obligation.goal)))
        return f"(set-logic {self.logic})\n" + solver.to_smt2()

    # ==================== API ====================

    def to_smt2(self, obligation: Obligation) -> str:
        """Texto SMT-LIB2 de una obligación."""
        if self.use_z3:
            return self._z3_text(obligation)
        return self._text(obligation)

    def export(self, obligations: List[Obligation], out_dir: str) -> List[Path]:
        """
        Escribe un fichero <proc>_<n>.smt2 por obligación (n desde 1 por procedimiento).

        Args:
            obligations: Obligaciones en orden de fuente
            out_dir: Directorio de salida (se crea si no existe)

        Returns:
            Rutas escritas
        """
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        counters: Dict[str, int] = defaultdict(int)
        written = []
        for obligation in obligations:
            proc = obligation.proc or 'program'
            counters[proc] += 1
            path = directory / f"{proc}_{counters[proc]}.smt2"
            path.write_text(self.to_smt2(obligation), encoding='utf-8')
            written.append(path)
        logger.info(f"Exportadas {len(written)} obligaciones a {directory}")
        return written
