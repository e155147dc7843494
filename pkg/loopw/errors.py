"""
Jerarquía de errores de LoopW.

Todas las excepciones del proyecto derivan de LoopwError y llevan,
cuando se conoce, la posición en el fuente (Span) y el nombre de la
regla que las produjo. El CLI traduce cada familia a un código de salida.
"""

from typing import Any, Optional


class LoopwError(Exception):
    """Error base de LoopW."""

    rule = 'error'

    def __init__(self, message: str, span: Optional[Any] = None, rule: Optional[str] = None):
        """
        Inicializa el error.

        Args:
            message: Mensaje legible
            span: Posición en el fuente (opcional)
            rule: Nombre de la regla (opcional, por defecto el de la clase)
        """
        super().__init__(message)
        self.message = message
        self.span = span
        if rule is not None:
            self.rule = rule

    def __str__(self) -> str:
        if self.span is not None and getattr(self.span, 'line', 0):
            return f"{self.span}: {self.message}"
        return self.message


class ConfigError(LoopwError):
    """Configuración inválida."""

    rule = 'config'


# ==================== SINTAXIS ====================

class LoopSyntaxError(LoopwError):
    """Error de sintaxis con la lista de tokens esperados."""

    rule = 'syntax'

    def __init__(self, message: str, span=None, expected: Optional[str] = None):
        super().__init__(message, span)
        self.expected = expected


class ArityError(LoopwError):
    """Símbolo de función no declarado o aplicado con aridad incorrecta."""

    rule = 'arity'

    def __init__(self, fsym: str, message: str, span=None):
        super().__init__(message, span)
        self.fsym = fsym


class UnboundName(LoopwError):
    """Nombre sin ligar."""

    rule = 'unbound'

    def __init__(self, name: str, message: Optional[str] = None, span=None):
        super().__init__(message or f"nombre no ligado: {name}", span)
        self.name = name


# ==================== MOTOR DE ÍNDICES ====================

class StepCapExceeded(LoopwError):
    """La reescritura agotó el límite de pasos (E posiblemente no terminante)."""

    rule = 'step-cap'

    def __init__(self, term: Any, steps: int):
        super().__init__(f"límite de {steps} pasos de reescritura agotado")
        self.term = term
        self.steps = steps


# ==================== TYPECHECKER ====================

class CheckError(LoopwError):
    """Error de tipado; aborta la comprobación del procedimiento actual."""

    rule = 'type'

    def __init__(self, message: str, span=None, rule: Optional[str] = None,
                 expected: Optional[str] = None, found: Optional[str] = None):
        super().__init__(message, span, rule)
        self.expected = expected
        self.found = found


class TypeMismatch(CheckError):
    rule = 'type-mismatch'


class FootprintViolation(CheckError):
    rule = 'footprint'


class InvariantEntryMismatch(CheckError):
    rule = 'for-entry'


class InvariantPreservationMismatch(CheckError):
    rule = 'for-preservation'


class NotALabel(CheckError):
    rule = 'jump-target'


class ImpureExpr(CheckError):
    rule = 'purity'


class UseBeforeAssign(CheckError):
    rule = 'definite-assignment'


class NonDataMuteAssertion(CheckError):
    rule = 'data-mute'


class RecursiveProcedure(CheckError):
    rule = 'no-recursion'


# ==================== TRADUCTOR ====================

class UntranslatableEquation(LoopwError):
    """Las ecuaciones de un símbolo no forman una recursión estructural."""

    rule = 'translate-equation'

    def __init__(self, fsym: str, message: str):
        super().__init__(message)
        self.fsym = fsym


class StuckTerm(LoopwError):
    """Término del núcleo bloqueado: indica un fallo de la traducción."""

    rule = 'stuck'


# ==================== EJECUCIÓN ====================

class EscapedLabel(LoopwError):
    """Salto a una etiqueta cuyo bloque ya terminó."""

    rule = 'escaped-label'

    def __init__(self, tag: Any, span=None):
        super().__init__(f"salto a la etiqueta {tag} fuera de su bloque", span)
        self.tag = tag


class FuelExceeded(LoopwError):
    """Se agotó el combustible de evaluación."""

    rule = 'fuel'
