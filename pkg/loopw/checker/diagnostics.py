"""
Diagnósticos del checker y del analizador de buena formación.

Un diagnóstico se imprime como una línea separada por tabuladores:
SEVERITY, procedimiento, línea:columna, regla, mensaje.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional

from ..errors import LoopwError, CheckError
from ..syntax.ast import Span, NO_SPAN


class Severity(Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"


@dataclass(frozen=True)
class Diagnostic:
    """Un error o aviso con posición y regla."""
    severity: Severity
    proc: str
    span: Span
    rule: str
    message: str
    expected: Optional[str] = None
    found: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def to_line(self) -> str:
        message = self.message
        if self.expected is not None or self.found is not None:
            message += f" (esperado: {self.expected}; encontrado: {self.found})"
        return '\t'.join([self.severity.value, self.proc or '-', str(self.span),
                          self.rule, message])

    def sort_key(self):
        return (self.span.line, self.span.col, self.proc, self.rule)

    @classmethod
    def from_error(cls, error: LoopwError, proc: str = '',
                   severity: Severity = Severity.ERROR) -> 'Diagnostic':
        """Convierte una excepción del proyecto en diagnóstico."""
        expected = found = None
        if isinstance(error, CheckError):
            expected, found = error.expected, error.found
        return cls(severity, proc, error.span or NO_SPAN, error.rule,
                   error.message, expected, found)


def error(proc: str, span: Optional[Span], rule: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.ERROR, proc, span or NO_SPAN, rule, message)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


def format_report(diagnostics: Iterable[Diagnostic]) -> List[str]:
    """Líneas del informe, ordenadas por posición en el fuente."""
    return [d.to_line() for d in sorted(diagnostics, key=Diagnostic.sort_key)]
