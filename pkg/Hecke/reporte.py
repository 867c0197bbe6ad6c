"""
Módulo de reportes - Resultados de verificación y salida de la CLI

Estructuras:
    - Afirmacion: Una afirmación verificada (esperado vs obtenido)
    - ReporteVerificacion: Lista de afirmaciones con estado global
    - Report: Resultado de un comando (eco, entradas, resultados, estado)

Formatos de salida:
    - Consola: encabezados con '=' y emojis de estado
    - JSON: claves ordenadas, enteros como cadenas decimales, racionales "num/den"
    - CSV: filas planas vía pandas
"""

import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Generator, List, Optional

import pandas as pd

from Hecke.intmat import CosetLabel

logger = logging.getLogger(__name__)


# ============================================================================
# CODIFICACIÓN JSON
# ============================================================================

def racional_a_texto(valor: Fraction) -> str:
    """Fraction -> "num/den" (siempre con denominador)."""
    valor = Fraction(valor)
    return f"{valor.numerator}/{valor.denominator}"


def etiqueta_a_json(etiqueta: CosetLabel) -> Dict[str, Any]:
    return {"r": racional_a_texto(etiqueta.r), "s": [str(x) for x in etiqueta.s]}


def a_json(valor: Any) -> Any:
    """
    Convierte recursivamente un resultado a tipos serializables sin pérdida.

    Los enteros se emiten como cadenas decimales, los racionales como
    "num/den" y las etiquetas como {"r": ..., "s": [...]}. Los objetos con
    método a_json() (HeckeElement, RepSet) se delegan.
    """
    if isinstance(valor, bool) or valor is None or isinstance(valor, str):
        return valor
    if isinstance(valor, int):
        return str(valor)
    if isinstance(valor, Fraction):
        return racional_a_texto(valor)
    if isinstance(valor, float):
        return valor
    if isinstance(valor, complex):
        return {"re": valor.real, "im": valor.imag}
    if isinstance(valor, CosetLabel):
        return etiqueta_a_json(valor)
    if hasattr(valor, "a_json"):
        return valor.a_json()
    if isinstance(valor, dict):
        return {str(k): a_json(v) for k, v in valor.items()}
    if isinstance(valor, (list, tuple, set, frozenset)):
        elementos = [a_json(v) for v in valor]
        if isinstance(valor, (set, frozenset)):
            elementos.sort(key=lambda x: json.dumps(x, sort_keys=True))
        return elementos
    # Escalares de numpy u otros numéricos
    if hasattr(valor, "item"):
        return a_json(valor.item())
    raise TypeError(f"❌ Valor no serializable en el reporte: {valor!r}")


def volcar_json(datos: Any) -> str:
    """Serialización determinista (claves ordenadas, indentación 2)."""
    return json.dumps(a_json(datos), sort_keys=True, indent=2, ensure_ascii=False)


# ============================================================================
# REPORTES DE VERIFICACIÓN
# ============================================================================

@dataclass
class Afirmacion:
    """Una afirmación comprobada: nombre, valor esperado, valor obtenido."""
    nombre: str
    esperado: Any
    obtenido: Any
    ok: bool
    segundos: float = 0.0

    def a_json(self) -> Dict[str, Any]:
        return {
            "nombre": self.nombre,
            "esperado": a_json(self.esperado),
            "obtenido": a_json(self.obtenido),
            "ok": self.ok,
            "segundos": round(self.segundos, 3),
        }


@dataclass
class ReporteVerificacion:
    """
    Conjunto de afirmaciones de una suite de verificación.

    Attributes:
        titulo: Nombre de la suite (p. ej. "teorema-a p=3")
        afirmaciones: Afirmaciones en orden de ejecución
    """
    titulo: str
    afirmaciones: List[Afirmacion] = field(default_factory=list)

    def agregar(self, nombre: str, esperado: Any, obtenido: Any, segundos: float = 0.0) -> Afirmacion:
        """Registra una afirmación; ok si esperado == obtenido."""
        afirmacion = Afirmacion(nombre, esperado, obtenido, esperado == obtenido, segundos)
        if afirmacion.ok:
            logger.debug(f"✅ {self.titulo}: {nombre}")
        else:
            logger.warning(f"❌ {self.titulo}: {nombre} esperado={esperado} obtenido={obtenido}")
        self.afirmaciones.append(afirmacion)
        return afirmacion

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.afirmaciones)

    @property
    def fallidas(self) -> List[Afirmacion]:
        return [a for a in self.afirmaciones if not a.ok]

    def filas(self) -> List[Dict[str, Any]]:
        return [
            {
                "suite": self.titulo,
                "afirmacion": a.nombre,
                "esperado": str(a.esperado),
                "obtenido": str(a.obtenido),
                "ok": a.ok,
                "segundos": round(a.segundos, 3),
            }
            for a in self.afirmaciones
        ]

    def a_json(self) -> Dict[str, Any]:
        return {
            "titulo": self.titulo,
            "ok": self.ok,
            "afirmaciones": [a.a_json() for a in self.afirmaciones],
        }


@contextmanager
def cronometro() -> Generator[List[float], None, None]:
    """
    Mide el tiempo de un bloque; el valor queda en la lista devuelta.

    Example:
        >>> with cronometro() as t:
        ...     hacer_algo()
        >>> segundos = t[0]
    """
    resultado: List[float] = [0.0]
    inicio = time.perf_counter()
    try:
        yield resultado
    finally:
        resultado[0] = time.perf_counter() - inicio


# ============================================================================
# REPORTE DE COMANDO
# ============================================================================

@dataclass
class Report:
    """
    Resultado de un subcomando de la CLI.

    Attributes:
        comando: Eco del comando (nombre del subcomando)
        entradas: Parámetros efectivos
        resultados: Valores calculados (etiquetas, coeficientes, grados, tiempos)
        ok: Estado global; False indica verificación fallida
        tabla: Filas planas para la salida CSV y la consola
    """
    comando: str
    entradas: Dict[str, Any]
    resultados: Dict[str, Any]
    ok: bool = True
    tabla: List[Dict[str, Any]] = field(default_factory=list)

    def a_json(self) -> Dict[str, Any]:
        return {
            "comando": self.comando,
            "entradas": a_json(self.entradas),
            "resultados": a_json(self.resultados),
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return volcar_json(self)

    def to_csv(self) -> str:
        """Tabla del reporte como CSV (una fila por resultado)."""
        filas = self.tabla or [{k: str(a_json(v)) for k, v in self.resultados.items()}]
        return pd.DataFrame(filas).to_csv(index=False)

    def to_text(self) -> str:
        """Formato de consola con encabezado y estado."""
        lineas = ["=" * 60, f"📊 {self.comando.upper()}", "=" * 60]
        for clave, valor in sorted(self.entradas.items()):
            lineas.append(f"  {clave}: {_texto(valor)}")
        lineas.append("-" * 60)
        if self.tabla:
            lineas.append(pd.DataFrame(self.tabla).to_string(index=False))
        else:
            for clave, valor in sorted(self.resultados.items()):
                lineas.append(f"  {clave}: {_texto(valor)}")
        lineas.append("-" * 60)
        lineas.append("✅ OK" if self.ok else "❌ FALLÓ")
        return "\n".join(lineas)


def _texto(valor: Any) -> str:
    if isinstance(valor, (list, tuple)):
        return ", ".join(_texto(v) for v in valor)
    return str(valor)


def cargar_json(texto: str) -> Any:
    """Lee un reporte emitido; volcar_json(cargar_json(x)) == x."""
    return json.loads(texto)


def resumen(reporte: Optional[ReporteVerificacion]) -> str:
    if reporte is None:
        return "⚠️ Sin reporte"
    total = len(reporte.afirmaciones)
    fallidas = len(reporte.fallidas)
    return f"{'✅' if reporte.ok else '❌'} {reporte.titulo}: {total - fallidas}/{total} afirmaciones"
