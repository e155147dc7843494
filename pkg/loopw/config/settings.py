"""
Configuración centralizada de LoopW.

Este módulo contiene los valores por defecto del sistema: límites del
motor de índices, cota de la búsqueda de contraejemplos, combustible de
evaluación, comportamiento del CLI y logging.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from ..errors import ConfigError

# Directorio raíz del proyecto
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Programas de ejemplo (.loopw)
CORPUS_DIR = BASE_DIR / "corpus"

# Configuración por defecto
DEFAULT_CONFIG: Dict[str, Any] = {
    # Motor de índices
    'step_cap': 10_000,          # pasos de reescritura por normalización
    'bound': 8,                  # cota B de la búsqueda de contraejemplos
    'max_valuations': 200_000,

    # Evaluación
    'fuel': 2_000_000,           # pasos del intérprete y de la máquina del núcleo
    'compare_max': 5,            # entradas 0..N en compare

    # Obligaciones
    'strict': False,             # UNPROVEN cuenta como error
    'discharge': True,           # False: todas quedan UNPROVEN(skipped)
    'smt_logic': 'ALL',

    # Programa
    'entry_name': 'main',

    # Logging
    'log_level': 'WARNING',
    'log_file': None,
    'log_to_console': True,
}

# Variables de entorno reconocidas por Config.from_env (LOOPW_<CLAVE>)
_ENV_PREFIX = 'LOOPW_'
_POSITIVE_KEYS = ('step_cap', 'bound', 'max_valuations', 'fuel')


def _coerce(raw: str, default: Any) -> Any:
    if isinstance(default, bool):
        return raw.strip().lower() in ('1', 'true', 'yes', 'si', 'sí')
    if isinstance(default, int):
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"valor entero no válido: {raw!r}")
    return raw


class Config:
    """Clase para gestionar la configuración de LoopW."""

    def __init__(self, custom_config: Optional[Dict[str, Any]] = None):
        """
        Inicializa la configuración.

        Args:
            custom_config: Diccionario con configuración personalizada

        Raises:
            ConfigError: Si algún límite no es positivo
        """
        self.config = DEFAULT_CONFIG.copy()
        if custom_config:
            self.config.update(custom_config)
        self.validate()

    @classmethod
    def from_env(cls, custom_config: Optional[Dict[str, Any]] = None) -> 'Config':
        """
        Construye la configuración leyendo .env y las variables LOOPW_*.

        Args:
            custom_config: Valores que prevalecen sobre el entorno

        Returns:
            Configuración validada
        """
        load_dotenv()
        values: Dict[str, Any] = {}
        for key, default in DEFAULT_CONFIG.items():
            raw = os.environ.get(_ENV_PREFIX + key.upper())
            if raw is not None:
                values[key] = _coerce(raw, default)
        values.update(custom_config or {})
        return cls(values)

    def validate(self) -> None:
        for key in _POSITIVE_KEYS:
            value = self.config.get(key)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{key} debe ser un entero >= 1 (recibido {value!r})")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Obtiene un valor de configuración.

        Args:
            key: Clave de configuración
            default: Valor por defecto si no existe

        Returns:
            Valor de configuración
        """
        return self.config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        self.config[key] = value
        self.validate()

    def update(self, config_dict: Dict[str, Any]) -> None:
        """
        Actualiza múltiples valores de configuración.

        Args:
            config_dict: Diccionario con valores a actualizar
        """
        self.config.update(config_dict)
        self.validate()

    def to_dict(self) -> Dict[str, Any]:
        return self.config.copy()
