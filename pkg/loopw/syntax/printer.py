"""
Impresión de la sintaxis de Loop^ω en su forma concreta.

La salida es reparseable: parse_program(print_program(p)) == p.
También se usa para mostrar tipos y fórmulas en los diagnósticos.
"""

from typing import List, Optional

from .ast import (
    IVar, Zero, Succ, App, IndexTerm,
    Truth, Eq, And, Implies, Forall, IndexFormula,
    Nat, Proc, Exists, EqTy, LabelTy, Ty,
    Param, Var, ZeroExpr, SuccExpr, Pack, ProcLit, LabelRef, Expr,
    Skip, Assign, Call, For, LabelBlock, Jump, Claim, Unpack, Stmt,
    Program, peel_succ, peel_succ_expr,
)

INDENT = '  '


def show_term(term: IndexTerm) -> str:
    if isinstance(term, IVar):
        return term.name
    if isinstance(term, Zero):
        return '0'
    if isinstance(term, Succ):
        count, base = peel_succ(term)
        return "s(" * count + show_term(base) + ")" * count
    if isinstance(term, App):
        return f"{term.fsym}({', '.join(show_term(a) for a in term.args)})"
    raise TypeError(f"no es un término de índice: {term!r}")


def show_formula(formula: Optional[IndexFormula]) -> str:
    """Muestra una fórmula con los paréntesis mínimos."""
    if formula is None:
        return 'true'
    return _formula(formula, 0)


# Niveles: 0 implicación, 1 conjunción, 2 átomo
def _formula(f: IndexFormula, level: int) -> str:
    if isinstance(f, Truth):
        return 'true'
    if isinstance(f, Eq):
        return f"{show_term(f.lhs)} = {show_term(f.rhs)}"
    if isinstance(f, Forall):
        text = f"forall {f.var}. {_formula(f.body, 0)}"
        return f"({text})" if level > 0 else text
    if isinstance(f, And):
        text = f"{_formula(f.left, 1)} && {_formula(f.right, 2)}"
        return f"({text})" if level > 1 else text
    if isinstance(f, Implies):
        text = f"{_formula(f.left, 1)} => {_formula(f.right, 0)}"
        return f"({text})" if level > 0 else text
    raise TypeError(f"no es una fórmula: {f!r}")


def _binders(names) -> str:
    return f"[{', '.join(names)}]"


def _pre_post(pre, post) -> str:
    text = ''
    if pre is not None:
        text += f" pre {show_formula(pre)}"
    if post is not None:
        text += f" post {show_formula(post)}"
    return text


def show_type(ty: Ty) -> str:
    if isinstance(ty, Nat):
        return f"nat({show_term(ty.index)})"
    if isinstance(ty, Proc):
        ins = ', '.join(show_type(t) for t in ty.ins)
        outs = ', '.join(show_type(t) for t in ty.outs)
        return (f"proc{_binders(ty.binders)}(in{' ' + ins if ins else ''}; "
                f"out{' ' + outs if outs else ''}){_pre_post(ty.pre, ty.post)}")
    if isinstance(ty, Exists):
        return f"exists{_binders(ty.binders)}({', '.join(show_type(t) for t in ty.comps)})"
    if isinstance(ty, EqTy):
        return f"{show_term(ty.lhs)} = {show_term(ty.rhs)}"
    if isinstance(ty, LabelTy):
        text = f"not({', '.join(show_type(t) for t in ty.neg_args)})"
        if ty.assertion is not None:
            text += f" assert {show_formula(ty.assertion)}"
        return text
    return str(ty)


def show_param(param: Param) -> str:
    return f"{param.name} : {show_type(param.ty)}"


def _params(params) -> str:
    return ', '.join(show_param(p) for p in params)


def _signature(lit: ProcLit) -> str:
    ins = _params(lit.ins)
    outs = _params(lit.outs)
    head = f"{_binders(lit.binders)}(in{' ' + ins if ins else ''}; out{' ' + outs if outs else ''})"
    return head + _pre_post(lit.pre, lit.post)


def show_expr(expr: Expr, depth: int = 0) -> str:
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, LabelRef):
        return expr.name
    if isinstance(expr, ZeroExpr):
        return '0'
    if isinstance(expr, SuccExpr):
        count, base = peel_succ_expr(expr)
        return "s(" * count + show_expr(base, depth) + ")" * count
    if isinstance(expr, Pack):
        idx = ', '.join(show_term(t) for t in expr.idx_args)
        comps = ', '.join(show_expr(c, depth) for c in expr.comps)
        return f"pack[{idx}]({comps})"
    if isinstance(expr, ProcLit):
        return f"proc{_signature(expr)} {_block(expr.body, depth)}"
    raise TypeError(f"no es una expresión: {expr!r}")


def show_stmt(stmt: Stmt, depth: int = 0) -> str:
    if isinstance(stmt, Skip):
        return 'skip'
    if isinstance(stmt, Assign):
        return f"{stmt.target} := {show_expr(stmt.value, depth)}"
    if isinstance(stmt, Call):
        idx = ', '.join(show_term(t) for t in stmt.idx_args)
        ins = ', '.join(show_expr(e, depth) for e in stmt.in_args)
        outs = ', '.join(stmt.out_vars)
        return f"call {show_expr(stmt.target, depth)} [{idx}] ({ins}; {outs})"
    if isinstance(stmt, For):
        text = (f"for {stmt.counter} := 0 until {show_expr(stmt.bound, depth)} "
                f"invariant [{stmt.inv_binder}] ({_params(stmt.footprint)})")
        if stmt.assertion is not None:
            text += f" assert {show_formula(stmt.assertion)}"
        return f"{text} {_block(stmt.body, depth)}"
    if isinstance(stmt, LabelBlock):
        text = f"label {stmt.label} out ({_params(stmt.footprint)})"
        if stmt.assertion is not None:
            text += f" assert {show_formula(stmt.assertion)}"
        return f"{text} {_block(stmt.body, depth)}"
    if isinstance(stmt, Jump):
        args = ', '.join(show_expr(e, depth) for e in stmt.args)
        return f"jump {show_expr(stmt.target, depth)} ({args})"
    if isinstance(stmt, Claim):
        return f"claim {show_formula(stmt.formula)}"
    if isinstance(stmt, Unpack):
        return (f"unpack [{', '.join(stmt.idx_names)}] ({', '.join(stmt.val_names)}) := "
                f"{show_expr(stmt.value, depth)}")
    raise TypeError(f"no es una sentencia: {stmt!r}")


def _block(body, depth: int) -> str:
    if not body:
        return '{ }'
    pad = INDENT * (depth + 1)
    lines = [f"{pad}{show_stmt(s, depth + 1)};" for s in body]
    return '{\n' + '\n'.join(lines) + '\n' + INDENT * depth + '}'


def print_program(program: Program) -> str:
    """
    Imprime un programa completo en sintaxis concreta.

    Args:
        program: Programa a imprimir

    Returns:
        Texto fuente reparseable
    """
    lines: List[str] = []
    for fsym, arity in program.signature:
        lines.append(f"sig {fsym}/{arity};")
    for eq in program.equations:
        lines.append(f"eq {show_term(eq.lhs)} = {show_term(eq.rhs)};")
    if lines:
        lines.append('')
    for decl in program.procs:
        lines.append(f"proc {decl.name}{_signature(decl.lit)} {_block(decl.lit.body, 0)}")
        lines.append('')
    return '\n'.join(lines)
