"""
Generador de reportes de verificación.

Convierte obligaciones y diagnósticos en tablas de pandas y las exporta
a CSV o JSON (`loopw vcs FILE --export salida.csv`).
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from ..checker.diagnostics import Diagnostic
from ..hoare.obligations import Obligation

logger = logging.getLogger('LoopW.Reporter')

OBLIGATION_COLUMNS = ['status', 'proc', 'line', 'col', 'rule', 'hyps', 'goal', 'reason']
DIAGNOSTIC_COLUMNS = ['severity', 'proc', 'line', 'col', 'rule', 'message', 'expected', 'found']


class Reporter:
    """Generador de reportes en CSV y JSON."""

    def __init__(self, obligations: List[Obligation],
                 diagnostics: Optional[List[Diagnostic]] = None,
                 source: str = ''):
        """
        Inicializa el generador de reportes.

        Args:
            obligations: Obligaciones en orden de fuente
            diagnostics: Diagnósticos del checker (opcional)
            source: Nombre del fichero analizado
        """
        self.obligations = obligations
        self.diagnostics = diagnostics or []
        self.source = source

    def obligations_frame(self) -> pd.DataFrame:
        df = pd.DataFrame([ob.to_dict() for ob in self.obligations], columns=OBLIGATION_COLUMNS)
        return df

    def diagnostics_frame(self) -> pd.DataFrame:
        rows = [{
            'severity': d.severity.value,
            'proc': d.proc,
            'line': d.span.line,
            'col': d.span.col,
            'rule': d.rule,
            'message': d.message,
            'expected': d.expected,
            'found': d.found,
        } for d in self.diagnostics]
        return pd.DataFrame(rows, columns=DIAGNOSTIC_COLUMNS)

    def summary(self) -> Dict[str, int]:
        """Número de obligaciones por estado."""
        counts = self.obligations_frame()['status'].value_counts()
        return {status: int(counts.get(status, 0)) for status in ('PROVEN', 'REFUTED', 'UNPROVEN')}

    def per_procedure(self) -> pd.DataFrame:
        """Tabla procedimiento × estado con el número de obligaciones."""
        df = self.obligations_frame()
        if df.empty:
            return pd.DataFrame()
        return df.pivot_table(index='proc', columns='status', values='goal',
                              aggfunc='count', fill_value=0)

    def export_to_csv(self, output_path: str) -> str:
        """
        Exporta las obligaciones a CSV.

        Args:
            output_path: Ruta del archivo de salida

        Returns:
            Ruta del archivo generado
        """
        df = self.obligations_frame()
        if df.empty:
            logger.warning(f"No hay obligaciones que exportar en {self.source or 'el programa'}")
        df.to_csv(output_path, index=False, encoding='utf-8')
        logger.info(f"Obligaciones exportadas a CSV: {output_path}")
        return output_path

    def export_to_json(self, output_path: str) -> str:
        """
        Exporta obligaciones, diagnósticos y resumen a JSON.

        Args:
            output_path: Ruta del archivo de salida

        Returns:
            Ruta del archivo generado
        """
        data = {
            'source': self.source,
            'summary': self.summary(),
            'obligations': self.obligations_frame().to_dict(orient='records'),
            'diagnostics': self.diagnostics_frame().to_dict(orient='records'),
        }
        with open(output_path, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False, default=str)
        logger.info(f"Datos exportados a JSON: {output_path}")
        return output_path

    def export(self, output_path: str) -> str:
        """Elige el formato por la extensión (.csv o .json)."""
        suffix = Path(output_path).suffix.lower()
        if suffix == '.json':
            return self.export_to_json(output_path)
        if suffix == '.csv':
            return self.export_to_csv(output_path)
        raise ValueError(f"formato de exportación no soportado: {suffix or '(sin extensión)'}")
