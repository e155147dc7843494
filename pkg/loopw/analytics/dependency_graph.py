"""
Grafos de dependencias de un programa Loop^ω.

- Procedimientos de nivel superior: una arista b -> a cuando el cuerpo de
  a nombra a b. Loop^ω no tiene recursión general, así que el grafo debe
  ser acíclico; su orden topológico fija el orden de las definiciones en
  el programa traducido.
- Funciones de E: una arista g -> f cuando una ecuación de f usa g. Se
  permiten autolazos (recursión estructural), no ciclos entre símbolos.
"""

import logging
from typing import Dict, Iterator, List

import networkx as nx

from ..syntax.ast import (
    App, IndexTerm, Var, Pack, Expr, Program, peel_succ, peel_succ_expr, stmt_exprs, walk_seq,
)

logger = logging.getLogger('LoopW.DependencyGraph')


def _expr_names(expr: Expr) -> Iterator[str]:
    """Nombres de variable de una expresión (sin entrar en literales de proc)."""
    _, expr = peel_succ_expr(expr)
    if isinstance(expr, Var):
        yield expr.name
    elif isinstance(expr, Pack):
        for comp in expr.comps:
            yield from _expr_names(comp)


def _term_symbols(term: IndexTerm) -> Iterator[str]:
    _, term = peel_succ(term)
    if isinstance(term, App):
        yield term.fsym
        for arg in term.args:
            yield from _term_symbols(arg)


class DependencyAnalyzer:
    """
    Analizador de dependencias entre procedimientos y entre funciones de E.
    """

    def __init__(self, program: Program):
        """
        Inicializa el analizador.

        Args:
            program: Programa ya parseado
        """
        self.program = program
        self.proc_graph = self.build_procedure_graph()
        self.equation_graph = self.build_equation_graph()

    # ==================== CONSTRUCCIÓN ====================

    def build_procedure_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        names = {decl.name for decl in self.program.procs}
        for decl in self.program.procs:
            graph.add_node(decl.name, line=decl.span.line)
        for decl in self.program.procs:
            for stmt in walk_seq(decl.lit.body):
                for expr in stmt_exprs(stmt):
                    for name in _expr_names(expr):
                        if name in names:
                            graph.add_edge(name, decl.name)
        logger.debug(f"Grafo de procedimientos: {graph.number_of_nodes()} nodos, "
                     f"{graph.number_of_edges()} aristas")
        return graph

    def build_equation_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for fsym, arity in self.program.signature:
            graph.add_node(fsym, arity=arity)
        for eq in self.program.equations:
            if not isinstance(eq.lhs, App):
                continue
            for used in _term_symbols(eq.rhs):
                graph.add_edge(used, eq.lhs.fsym)
        return graph

    # ==================== CONSULTAS ====================

    def procedure_cycles(self) -> List[List[str]]:
        """Ciclos de referencias entre procedimientos (incluye autolazos)."""
        return sorted(sorted(c) for c in nx.simple_cycles(self.proc_graph))

    def is_recursive(self) -> bool:
        return not nx.is_directed_acyclic_graph(self.proc_graph)

    def procedure_order(self) -> List[str]:
        """Procedimientos con las dependencias primero (orden determinista)."""
        return list(nx.lexicographical_topological_sort(self.proc_graph))

    def mutual_recursion(self) -> List[List[str]]:
        """Grupos de símbolos de E definidos por recursión mutua."""
        groups = [sorted(c) for c in nx.strongly_connected_components(self.equation_graph) if len(c) > 1]
        return sorted(groups)

    def equation_order(self) -> List[str]:
        """Símbolos de E con las dependencias primero (ignora autolazos)."""
        graph = self.equation_graph.copy()
        graph.remove_edges_from(list(nx.selfloop_edges(graph)))
        return list(nx.lexicographical_topological_sort(graph))

    def summary(self) -> Dict[str, int]:
        return {
            'procedures': self.proc_graph.number_of_nodes(),
            'procedure_edges': self.proc_graph.number_of_edges(),
            'functions': self.equation_graph.number_of_nodes(),
            'function_edges': self.equation_graph.number_of_edges(),
        }
