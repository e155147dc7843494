"""
Parser descendente recursivo de Loop^ω.

Gramática (ver QUICKSTART.md): firmas `sig`, ecuaciones `eq`, procedimientos
`proc`. El parser comprueba la aridad de los símbolos de función contra la
firma y resuelve las referencias a etiquetas (`LabelRef`) por ámbito léxico;
el resto de comprobaciones de ámbito las hace wellformed.
"""

import logging
from typing import Callable, List, Optional, Tuple, TypeVar

from .ast import (
    Span, IVar, Zero, Succ, App, IndexTerm, numeral,
    Truth, Eq, And, Implies, Forall, IndexFormula,
    Nat, Proc, Exists, EqTy, LabelTy, Ty,
    Param, Var, ZeroExpr, SuccExpr, Pack, ProcLit, LabelRef, Expr,
    Skip, Assign, Call, For, LabelBlock, Jump, Claim, Unpack, Stmt,
    Equation, ProcDecl, Program,
)
from .lexer import Token, tokenize
from ..errors import ArityError, LoopSyntaxError, UnboundName

logger = logging.getLogger('LoopW.Parser')

T = TypeVar('T')


class Parser:
    """Parser de programas, tipos, fórmulas y términos."""

    def __init__(self, tokens: List[Token], arities: Optional[dict] = None):
        """
        Inicializa el parser.

        Args:
            tokens: Tokens producidos por tokenize()
            arities: Firma ya conocida (para parsear fragmentos sueltos)
        """
        self.tokens = tokens
        self.pos = 0
        self.arities = dict(arities or {})
        self.labels: List[str] = []

    # ==================== UTILIDADES ====================

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        self.pos += 1
        return token

    def at(self, value: str) -> bool:
        return self.peek().is_(value)

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.advance()
            return True
        return False

    def expect(self, value: str) -> Token:
        token = self.peek()
        if not token.is_(value):
            self.fail(f"'{value}'")
        return self.advance()

    def expect_ident(self) -> Token:
        token = self.peek()
        if token.kind != 'ident':
            self.fail('identificador')
        return self.advance()

    def fail(self, expected: str):
        token = self.peek()
        found = token.value or 'fin de fichero'
        raise LoopSyntaxError(f"se esperaba {expected}, se encontró {found!r}",
                              token.span, expected)

    def comma_list(self, item: Callable[[], T], closer: str) -> Tuple[T, ...]:
        """Lista separada por comas, posiblemente vacía, hasta `closer`."""
        items = []
        if self.at(closer):
            return ()
        items.append(item())
        while self.accept(','):
            items.append(item())
        return tuple(items)

    # ==================== PROGRAMA ====================

    def parse_program(self) -> Program:
        signature = []
        while self.at('sig'):
            self.advance()
            name = self.expect_ident()
            self.expect('/')
            arity_tok = self.peek()
            if arity_tok.kind != 'nat':
                self.fail('aridad')
            self.advance()
            self.expect(';')
            signature.append((name.value, int(arity_tok.value)))
            self.arities[name.value] = int(arity_tok.value)

        equations = []
        while self.at('eq'):
            start = self.advance().span
            lhs = self.parse_term()
            self.expect('=')
            rhs = self.parse_term()
            self.expect(';')
            equations.append(Equation(lhs, rhs, start))

        procs = []
        while self.at('proc'):
            procs.append(self.parse_proc_decl())
        if not procs:
            self.fail("'proc'")
        if self.peek().kind != 'eof':
            self.fail("'proc' o fin de fichero")

        names = [p.name for p in procs]
        entry = 'main' if 'main' in names else names[-1]
        logger.debug(f"Programa parseado: {len(procs)} procedimientos, {len(equations)} ecuaciones")
        return Program(tuple(signature), tuple(equations), tuple(procs), entry)

    def parse_proc_decl(self) -> ProcDecl:
        start = self.expect('proc').span
        name = self.expect_ident().value
        lit = self._proc_rest(start)
        return ProcDecl(name, lit, start)

    def _binders(self) -> Tuple[str, ...]:
        if not self.accept('['):
            return ()
        names = self.comma_list(lambda: self.expect_ident().value, ']')
        self.expect(']')
        return names

    def _signature_parts(self, item: Callable[[], T]) -> Tuple[Tuple[T, ...], Tuple[T, ...]]:
        self.expect('(')
        self.expect('in')
        ins = self.comma_list(item, ';')
        self.expect(';')
        self.expect('out')
        outs = self.comma_list(item, ')')
        self.expect(')')
        return ins, outs

    def _pre_post(self) -> Tuple[Optional[IndexFormula], Optional[IndexFormula]]:
        pre = post = None
        if self.accept('pre'):
            pre = self.parse_formula()
        if self.accept('post'):
            post = self.parse_formula()
        return pre, post

    def _proc_rest(self, start: Span) -> ProcLit:
        binders = self._binders()
        ins, outs = self._signature_parts(self.parse_param)
        pre, post = self._pre_post()
        body = self.parse_block()
        return ProcLit(binders, ins, outs, pre, post, body, start)

    def parse_param(self) -> Param:
        name = self.expect_ident().value
        self.expect(':')
        return Param(name, self.parse_type())

    # ==================== SENTENCIAS ====================

    def parse_block(self) -> Tuple[Stmt, ...]:
        self.expect('{')
        stmts = []
        while not self.at('}'):
            stmts.append(self.parse_stmt())
            self.expect(';')
        self.expect('}')
        return tuple(stmts)

    def parse_stmt(self) -> Stmt:
        token = self.peek()
        span = token.span
        if self.accept('skip'):
            return Skip(span)
        if token.kind == 'ident':
            name = self.advance().value
            self.expect(':=')
            return Assign(name, self.parse_expr(), span)
        if self.accept('call'):
            target = self.parse_expr()
            idx_args: Tuple[IndexTerm, ...] = ()
            if self.accept('['):
                idx_args = self.comma_list(self.parse_term, ']')
                self.expect(']')
            self.expect('(')
            in_args = self.comma_list(self.parse_expr, ';')
            self.expect(';')
            out_vars = self.comma_list(lambda: self.expect_ident().value, ')')
            self.expect(')')
            return Call(target, idx_args, in_args, out_vars, span)
        if self.accept('for'):
            counter = self.expect_ident().value
            self.expect(':=')
            zero = self.peek()
            if zero.kind != 'nat' or zero.value != '0':
                self.fail("'0'")
            self.advance()
            self.expect('until')
            bound = self.parse_expr()
            self.expect('invariant')
            self.expect('[')
            binder = self.expect_ident().value
            self.expect(']')
            self.expect('(')
            footprint = self.comma_list(self.parse_param, ')')
            self.expect(')')
            assertion = self.parse_formula() if self.accept('assert') else None
            body = self.parse_block()
            return For(counter, bound, binder, footprint, body, assertion, span)
        if self.accept('label'):
            label = self.expect_ident().value
            self.expect('out')
            self.expect('(')
            footprint = self.comma_list(self.parse_param, ')')
            self.expect(')')
            assertion = self.parse_formula() if self.accept('assert') else None
            self.labels.append(label)
            try:
                body = self.parse_block()
            finally:
                self.labels.pop()
            return LabelBlock(label, footprint, body, assertion, span)
        if self.accept('jump'):
            target = self.parse_expr()
            self.expect('(')
            args = self.comma_list(self.parse_expr, ')')
            self.expect(')')
            return Jump(target, args, span)
        if self.accept('claim'):
            return Claim(self.parse_formula(), span)
        if self.accept('unpack'):
            self.expect('[')
            idx_names = self.comma_list(lambda: self.expect_ident().value, ']')
            self.expect(']')
            self.expect('(')
            val_names = self.comma_list(lambda: self.expect_ident().value, ')')
            self.expect(')')
            self.expect(':=')
            return Unpack(idx_names, val_names, self.parse_expr(), span)
        self.fail('sentencia')

    # ==================== EXPRESIONES ====================

    def parse_expr(self) -> Expr:
        token = self.peek()
        span = token.span
        if token.kind == 'nat':
            self.advance()
            expr: Expr = ZeroExpr(span)
            for _ in range(int(token.value)):
                expr = SuccExpr(expr, span)
            return expr
        if token.is_('s') and self.peek(1).is_('('):
            self.advance()
            self.expect('(')
            arg = self.parse_expr()
            self.expect(')')
            return SuccExpr(arg, span)
        if token.kind == 'ident':
            self.advance()
            if token.value in self.labels:
                return LabelRef(token.value, span)
            return Var(token.value, span)
        if self.accept('pack'):
            self.expect('[')
            idx_args = self.comma_list(self.parse_term, ']')
            self.expect(']')
            self.expect('(')
            comps = self.comma_list(self.parse_expr, ')')
            self.expect(')')
            return Pack(idx_args, comps, span)
        if self.accept('proc'):
            return self._proc_rest(span)
        self.fail('expresión')

    # ==================== TIPOS ====================

    def parse_type(self) -> Ty:
        if self.accept('nat'):
            self.expect('(')
            index = self.parse_term()
            self.expect(')')
            return Nat(index)
        if self.accept('proc'):
            binders = self._binders()
            ins, outs = self._signature_parts(self.parse_type)
            pre, post = self._pre_post()
            return Proc(binders, ins, outs, pre, post)
        if self.accept('exists'):
            binders = self._binders()
            self.expect('(')
            comps = self.comma_list(self.parse_type, ')')
            self.expect(')')
            return Exists(binders, comps)
        if self.accept('not'):
            self.expect('(')
            args = self.comma_list(self.parse_type, ')')
            self.expect(')')
            assertion = self.parse_formula() if self.accept('assert') else None
            return LabelTy(args, assertion)
        lhs = self.parse_term()
        self.expect('=')
        return EqTy(lhs, self.parse_term())

    # ==================== FÓRMULAS ====================

    def parse_formula(self) -> IndexFormula:
        left = self._conjunction()
        if self.accept('=>'):
            return Implies(left, self.parse_formula())
        return left

    def _conjunction(self) -> IndexFormula:
        left = self._formula_atom()
        while self.accept('&&'):
            left = And(left, self._formula_atom())
        return left

    def _formula_atom(self) -> IndexFormula:
        if self.accept('true'):
            return Truth()
        if self.accept('forall'):
            var = self.expect_ident().value
            self.expect('.')
            return Forall(var, self.parse_formula())
        if self.accept('('):
            inner = self.parse_formula()
            self.expect(')')
            return inner
        lhs = self.parse_term()
        self.expect('=')
        return Eq(lhs, self.parse_term())

    # ==================== TÉRMINOS ====================

    def parse_term(self) -> IndexTerm:
        token = self.peek()
        if token.kind == 'nat':
            self.advance()
            return numeral(int(token.value))
        if token.is_('s') and self.peek(1).is_('('):
            self.advance()
            self.expect('(')
            arg = self.parse_term()
            self.expect(')')
            return Succ(arg)
        if token.kind != 'ident':
            self.fail('término de índice')
        self.advance()
        name = token.value
        if self.at('('):
            self.advance()
            args = self.comma_list(self.parse_term, ')')
            self.expect(')')
            self._check_arity(name, len(args), token)
            return App(name, args)
        if name in self.arities:
            self._check_arity(name, 0, token)
            return App(name, ())
        if name in self.labels:
            raise UnboundName(name, f"la etiqueta {name} no es un término de índice", token.span)
        return IVar(name)

    def _check_arity(self, name: str, count: int, token: Token) -> None:
        if name not in self.arities:
            raise ArityError(name, f"símbolo de función no declarado: {name}", token.span)
        if self.arities[name] != count:
            raise ArityError(name, f"{name} espera {self.arities[name]} argumentos, recibe {count}",
                             token.span)


# ==================== API ====================

def parse_program(text: str) -> Program:
    """
    Parsea un programa .loopw completo.

    Args:
        text: Texto fuente

    Returns:
        Programa (sin comprobar buena formación)

    Raises:
        LoopSyntaxError, ArityError, UnboundName
    """
    return Parser(tokenize(text)).parse_program()


def _fragment(text: str, arities: Optional[dict], rule: Callable[[Parser], T]) -> T:
    parser = Parser(tokenize(text), arities)
    result = rule(parser)
    if parser.peek().kind != 'eof':
        parser.fail('fin de fichero')
    return result


def parse_term(text: str, arities: Optional[dict] = None) -> IndexTerm:
    return _fragment(text, arities, Parser.parse_term)


def parse_formula(text: str, arities: Optional[dict] = None) -> IndexFormula:
    return _fragment(text, arities, Parser.parse_formula)


def parse_type(text: str, arities: Optional[dict] = None) -> Ty:
    return _fragment(text, arities, Parser.parse_type)


def parse_seq(text: str, arities: Optional[dict] = None,
              labels: Tuple[str, ...] = ()) -> Tuple[Stmt, ...]:
    """Parsea una secuencia entre llaves (útil en tests y en la API)."""
    parser = Parser(tokenize(text), arities)
    parser.labels.extend(labels)
    result = parser.parse_block()
    if parser.peek().kind != 'eof':
        parser.fail('fin de fichero')
    return result
