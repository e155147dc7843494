"""
Funciones auxiliares de LoopW: logging, lectura de fuentes y formato.
"""

import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

try:
    import coloredlogs
    COLOREDLOGS_AVAILABLE = True
except ImportError:
    COLOREDLOGS_AVAILABLE = False

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(log_level: str = 'WARNING',
                  log_file: Optional[str] = None,
                  log_to_console: bool = True) -> logging.Logger:
    """
    Configura el sistema de logging.

    Args:
        log_level: Nivel de logging (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Ruta al archivo de log (opcional)
        log_to_console: Si True, también muestra logs en consola (stderr)

    Returns:
        Logger raíz 'LoopW' configurado
    """
    logger = logging.getLogger('LoopW')
    level = getattr(logging, log_level.upper(), logging.WARNING)
    logger.setLevel(level)

    # Evitar duplicar handlers
    logger.handlers.clear()
    logger.propagate = False

    if log_to_console:
        if COLOREDLOGS_AVAILABLE:
            coloredlogs.install(level=level, logger=logger, fmt=LOG_FORMAT, datefmt=DATE_FORMAT)
        else:
            console_handler = logging.StreamHandler()
            console_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
            logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(file_handler)

    return logger


def read_source(path: str) -> str:
    """
    Lee un fichero fuente .loopw.

    Args:
        path: Ruta al fichero

    Returns:
        Contenido en UTF-8
    """
    return Path(path).read_text(encoding='utf-8')


def render_values(values: Sequence) -> List[str]:
    """Una línea por valor de salida."""
    return [str(v) for v in values]


def format_inputs(inputs: Iterable[int]) -> str:
    return '(' + ', '.join(str(n) for n in inputs) + ')'


def banner(title: str, width: int = 60) -> str:
    return f"{'=' * width}\n{title}\n{'=' * width}"
