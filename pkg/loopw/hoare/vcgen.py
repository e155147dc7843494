"""
Extracción de condiciones de verificación de un programa completo.
"""

import logging
from typing import List, Optional

from ..config.settings import Config
from ..syntax.ast import Program
from ..checker.typechecker import TypeChecker
from .obligations import Obligation

logger = logging.getLogger('LoopW.Hoare')


def vcgen(program: Program, config: Optional[Config] = None) -> List[Obligation]:
    """
    Todas las obligaciones del programa, en orden de aparición en el fuente.

    Las obligaciones de código inalcanzable (tras un salto) no se emiten, y
    un procedimiento sin claim, pre ni post no emite ninguna.

    Args:
        program: Programa bien formado
        config: Configuración (cota, límite de pasos, descarga)

    Returns:
        Lista de obligaciones con su estado
    """
    report = TypeChecker(program, config=config).check_program()
    logger.info(f"vcgen: {len(report.obligations)} obligaciones "
                f"({len(report.refuted)} refutadas, {len(report.unproven)} sin probar)")
    return report.obligations
