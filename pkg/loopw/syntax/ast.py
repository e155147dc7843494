"""
Sintaxis abstracta de Loop^ω.

Define los términos de índice, las fórmulas de aserción, los tipos
dependientes, las expresiones, las sentencias y el programa. Todos los
nodos son dataclasses inmutables; la posición (Span) no participa en la
igualdad estructural, de modo que parse(print(a)) == a.
"""

from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple, Union


@dataclass(frozen=True)
class Span:
    """Posición (línea, columna) en el fuente; 0:0 si es desconocida."""
    line: int = 0
    col: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NO_SPAN = Span()


def _span() -> Span:
    return field(default=NO_SPAN, compare=False, repr=False)


# ==================== TÉRMINOS DE ÍNDICE ====================

@dataclass(frozen=True)
class IVar:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True, eq=False)
class Succ:
    """Sucesor. Las cadenas s(s(...)) se comparan y se resumen sin recursión."""
    arg: 'IndexTerm'

    def __eq__(self, other):
        if not isinstance(other, Succ):
            return NotImplemented
        left, right = peel_succ(self), peel_succ(other)
        return left[0] == right[0] and left[1] == right[1]

    def __hash__(self):
        count, base = peel_succ(self)
        return hash(('s', count, base))

    def __repr__(self):
        count, base = peel_succ(self)
        return "Succ(arg=" * count + repr(base) + ")" * count


@dataclass(frozen=True)
class App:
    fsym: str
    args: Tuple['IndexTerm', ...] = ()


IndexTerm = Union[IVar, Zero, Succ, App]


def peel_succ(term: IndexTerm) -> Tuple[int, IndexTerm]:
    """Separa una cadena de sucesores: (número de s, término base)."""
    count = 0
    while isinstance(term, Succ):
        count += 1
        term = term.arg
    return count, term


def add_succ(term: IndexTerm, count: int) -> IndexTerm:
    for _ in range(count):
        term = Succ(term)
    return term


def numeral(n: int) -> IndexTerm:
    """Construye el numeral s(...s(0)...) con n sucesores."""
    return add_succ(Zero(), n)


def numeral_value(term: IndexTerm) -> Optional[int]:
    """Devuelve el entero de un numeral cerrado, o None si no lo es."""
    count, base = peel_succ(term)
    return count if isinstance(base, Zero) else None


# ==================== FÓRMULAS ====================

@dataclass(frozen=True)
class Truth:
    pass


@dataclass(frozen=True)
class Eq:
    lhs: IndexTerm
    rhs: IndexTerm


@dataclass(frozen=True)
class And:
    left: 'IndexFormula'
    right: 'IndexFormula'


@dataclass(frozen=True)
class Implies:
    left: 'IndexFormula'
    right: 'IndexFormula'


@dataclass(frozen=True)
class Forall:
    var: str
    body: 'IndexFormula'


IndexFormula = Union[Truth, Eq, And, Implies, Forall]


def conjoin(*formulas: Optional[IndexFormula]) -> IndexFormula:
    """Conjunción que omite None y `true`."""
    parts = [f for f in formulas if f is not None and not isinstance(f, Truth)]
    if not parts:
        return Truth()
    result = parts[0]
    for f in parts[1:]:
        result = And(result, f)
    return result


def conjuncts(formula: Optional[IndexFormula]) -> Tuple[IndexFormula, ...]:
    """Aplana las conjunciones de primer nivel (sin `true`)."""
    if formula is None or isinstance(formula, Truth):
        return ()
    if isinstance(formula, And):
        return conjuncts(formula.left) + conjuncts(formula.right)
    return (formula,)


# ==================== TIPOS ====================

@dataclass(frozen=True)
class Nat:
    index: IndexTerm


@dataclass(frozen=True)
class Proc:
    binders: Tuple[str, ...]
    ins: Tuple['Ty', ...]
    outs: Tuple['Ty', ...]
    pre: Optional[IndexFormula] = None
    post: Optional[IndexFormula] = None


@dataclass(frozen=True)
class Exists:
    binders: Tuple[str, ...]
    comps: Tuple['Ty', ...]


@dataclass(frozen=True)
class EqTy:
    lhs: IndexTerm
    rhs: IndexTerm


@dataclass(frozen=True)
class LabelTy:
    """Tipo ¬σ̄ de una etiqueta de primera clase (con su aserción opcional)."""
    neg_args: Tuple['Ty', ...]
    assertion: Optional[IndexFormula] = None


Ty = Union[Nat, Proc, Exists, EqTy, LabelTy]


def value_comps(comps: Tuple['Ty', ...]) -> Tuple['Ty', ...]:
    """Componentes de un registro que llevan valor (sin igualdades)."""
    return tuple(c for c in comps if not isinstance(c, EqTy))


# ==================== EXPRESIONES ====================

@dataclass(frozen=True)
class Param:
    name: str
    ty: Ty


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class ZeroExpr:
    span: Span = _span()


@dataclass(frozen=True, eq=False)
class SuccExpr:
    arg: 'Expr'
    span: Span = _span()

    def __eq__(self, other):
        if not isinstance(other, SuccExpr):
            return NotImplemented
        left, right = peel_succ_expr(self), peel_succ_expr(other)
        return left[0] == right[0] and left[1] == right[1]

    def __hash__(self):
        count, base = peel_succ_expr(self)
        return hash(('s', count, base))

    def __repr__(self):
        count, base = peel_succ_expr(self)
        return "SuccExpr(arg=" * count + repr(base) + ")" * count


def peel_succ_expr(expr: 'Expr') -> Tuple[int, 'Expr']:
    """Como peel_succ, para expresiones s(e)."""
    count = 0
    while isinstance(expr, SuccExpr):
        count += 1
        expr = expr.arg
    return count, expr


@dataclass(frozen=True)
class Pack:
    idx_args: Tuple[IndexTerm, ...]
    comps: Tuple['Expr', ...]
    span: Span = _span()


@dataclass(frozen=True)
class ProcLit:
    binders: Tuple[str, ...]
    ins: Tuple[Param, ...]
    outs: Tuple[Param, ...]
    pre: Optional[IndexFormula]
    post: Optional[IndexFormula]
    body: Tuple['Stmt', ...]
    span: Span = _span()

    def proc_type(self) -> Proc:
        """Tipo de procedimiento declarado por el literal."""
        return Proc(self.binders,
                    tuple(p.ty for p in self.ins),
                    tuple(p.ty for p in self.outs),
                    self.pre, self.post)


@dataclass(frozen=True)
class LabelRef:
    name: str
    span: Span = _span()


Expr = Union[Var, ZeroExpr, SuccExpr, Pack, ProcLit, LabelRef]


# ==================== SENTENCIAS ====================

@dataclass(frozen=True)
class Skip:
    span: Span = _span()


@dataclass(frozen=True)
class Assign:
    target: str
    value: Expr
    span: Span = _span()


@dataclass(frozen=True)
class Call:
    target: Expr
    idx_args: Tuple[IndexTerm, ...]
    in_args: Tuple[Expr, ...]
    out_vars: Tuple[str, ...]
    span: Span = _span()


@dataclass(frozen=True)
class For:
    counter: str
    bound: Expr
    inv_binder: str
    footprint: Tuple[Param, ...]
    body: Tuple['Stmt', ...]
    assertion: Optional[IndexFormula] = None
    span: Span = _span()


@dataclass(frozen=True)
class LabelBlock:
    label: str
    footprint: Tuple[Param, ...]
    body: Tuple['Stmt', ...]
    assertion: Optional[IndexFormula] = None
    span: Span = _span()


@dataclass(frozen=True)
class Jump:
    target: Expr
    args: Tuple[Expr, ...]
    span: Span = _span()


@dataclass(frozen=True)
class Claim:
    formula: IndexFormula
    span: Span = _span()


@dataclass(frozen=True)
class Unpack:
    idx_names: Tuple[str, ...]
    val_names: Tuple[str, ...]
    value: Expr
    span: Span = _span()


Stmt = Union[Skip, Assign, Call, For, LabelBlock, Jump, Claim, Unpack]
Seq = Tuple[Stmt, ...]


# ==================== PROGRAMA ====================

@dataclass(frozen=True)
class Equation:
    lhs: IndexTerm
    rhs: IndexTerm
    span: Span = _span()


@dataclass(frozen=True)
class ProcDecl:
    name: str
    lit: ProcLit
    span: Span = _span()


@dataclass(frozen=True)
class Program:
    signature: Tuple[Tuple[str, int], ...]
    equations: Tuple[Equation, ...]
    procs: Tuple[ProcDecl, ...]
    entry: str = 'main'

    def proc(self, name: str) -> Optional[ProcDecl]:
        """Busca un procedimiento por nombre."""
        for decl in self.procs:
            if decl.name == name:
                return decl
        return None

    def entry_proc(self) -> ProcDecl:
        """Procedimiento de entrada (`main` o, en su defecto, el último)."""
        decl = self.proc(self.entry)
        return decl if decl is not None else self.procs[-1]

    def arities(self) -> dict:
        return dict(self.signature)


# ==================== RECORRIDOS ====================

def sub_statements(stmt: Stmt) -> Iterator[Stmt]:
    """Sentencias directamente anidadas (cuerpos de for / label)."""
    if isinstance(stmt, (For, LabelBlock)):
        yield from stmt.body


def stmt_exprs(stmt: Stmt) -> Iterator[Expr]:
    """Expresiones que aparecen directamente en una sentencia."""
    if isinstance(stmt, Assign):
        yield stmt.value
    elif isinstance(stmt, Call):
        yield stmt.target
        yield from stmt.in_args
    elif isinstance(stmt, For):
        yield stmt.bound
    elif isinstance(stmt, Jump):
        yield stmt.target
        yield from stmt.args
    elif isinstance(stmt, Unpack):
        yield stmt.value


def walk_seq(seq: Seq, into_procs: bool = True) -> Iterator[Stmt]:
    """Recorre en preorden todas las sentencias de una secuencia."""
    for stmt in seq:
        yield stmt
        yield from walk_seq(tuple(sub_statements(stmt)), into_procs)
        if into_procs:
            for expr in stmt_exprs(stmt):
                for lit in proc_literals(expr):
                    yield from walk_seq(lit.body, into_procs)


def proc_literals(expr: Expr) -> Iterator[ProcLit]:
    """Literales de procedimiento de nivel superior dentro de una expresión."""
    _, expr = peel_succ_expr(expr)
    if isinstance(expr, ProcLit):
        yield expr
    elif isinstance(expr, Pack):
        for comp in expr.comps:
            yield from proc_literals(comp)
