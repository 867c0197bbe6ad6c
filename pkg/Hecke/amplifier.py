"""
Módulo del amplificador - Coeficientes α_ℓ y amplitud A_f

Construye los coeficientes

    α_ℓ = conj(c₀(ℓ))   si ℓ <= √L es primo
    α_ℓ = -1            si ℓ <= L es el cuadrado de un primo
    α_ℓ = 0             en otro caso

y evalúa A_f = |Σ_ℓ α_ℓ c(ℓ)|² junto con la cota de división
A_f <= 2|Σ_p α_p c(p)|² + 2|Σ_p α_{p²} c(p²)|².

Los autovalores son datos de entrada (tablas de texto o el sustituto de
GL(2) con λ(q²) = λ(q)² - 1); no se modela ninguna forma automorfa.

Formato de tabla (texto, separado por espacios):
    # comentario
    ℓ re [im]
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
import pandas as pd
from sympy import isprime, primerange

from Hecke.errores import AutovalorFaltante

logger = logging.getLogger(__name__)

# Alias de tipos
EigenvalueTable = Dict[int, complex]

TOLERANCIA_RELATIVA: float = 1e-12


@dataclass(frozen=True)
class AmplifierCoefficients:
    """
    Coeficientes del amplificador.

    Attributes:
        L: Parámetro de longitud
        alpha: ℓ -> α_ℓ, sólo entradas no nulas
    """
    L: float
    alpha: Dict[int, complex] = field(default_factory=dict)

    def support(self) -> List[int]:
        return sorted(self.alpha)

    def a_json(self) -> Dict[str, object]:
        return {
            "L": self.L,
            "alpha": {str(ell): {"re": v.real, "im": v.imag} for ell, v in sorted(self.alpha.items())},
        }


def primos_soporte(L: float) -> List[int]:
    """Primos q con q <= √L (equivalente a q² <= L)."""
    if L < 0:
        raise ValueError(f"❌ L debe ser positivo: {L}")
    tope = math.isqrt(math.floor(L))
    return [int(q) for q in primerange(2, tope + 1)]


def _valor(tabla: EigenvalueTable, ell: int, origen: str) -> complex:
    try:
        return complex(tabla[ell])
    except KeyError:
        raise AutovalorFaltante(ell, origen) from None


# ============================================================================
# CONSTRUCCIÓN Y AMPLITUD
# ============================================================================

def build_alpha(L: float, c0: EigenvalueTable) -> AmplifierCoefficients:
    """
    Coeficientes α_ℓ a partir de los autovalores c₀ de la forma objetivo.

    Args:
        L: Longitud del amplificador
        c0: Autovalores de la forma objetivo (al menos en los primos <= √L)

    Returns:
        AmplifierCoefficients: α_q = conj(c₀(q)), α_{q²} = -1

    Raises:
        AutovalorFaltante: Si c₀ no define algún primo del soporte

    Example:
        >>> sorted(build_alpha(4, {2: 1}).alpha.items())
        [(2, (1-0j)), (4, (-1+0j))]
    """
    alpha: Dict[int, complex] = {}
    for q in primos_soporte(L):
        alpha[q] = _valor(c0, q, "c0").conjugate()
        alpha[q * q] = complex(-1)
    logger.debug(f"Amplificador L={L}: {len(alpha)} coeficientes no nulos")
    return AmplifierCoefficients(float(L), alpha)


def amplitude_parts(alpha: AmplifierCoefficients, c: EigenvalueTable) -> Tuple[complex, complex]:
    """
    Sumas parciales (Σ_p α_p c(p), Σ_ℓ α_ℓ c(ℓ)) sobre el soporte de alpha.

    Los índices primos van a la primera suma; el resto (cuadrados de primos
    en los coeficientes de build_alpha) a la segunda.

    Raises:
        AutovalorFaltante: Si c no cubre el soporte de alpha
    """
    primos = [(ell, a) for ell, a in sorted(alpha.alpha.items()) if isprime(ell)]
    resto = [(ell, a) for ell, a in sorted(alpha.alpha.items()) if not isprime(ell)]

    def _suma(terminos: List[Tuple[int, complex]]) -> complex:
        if not terminos:
            return 0j
        a = np.array([v for _, v in terminos], dtype=complex)
        valores = np.array([_valor(c, ell, "c") for ell, _ in terminos], dtype=complex)
        return complex(np.dot(a, valores))

    return _suma(primos), _suma(resto)


def amplitude(alpha: AmplifierCoefficients, c: EigenvalueTable) -> float:
    """
    A = |Σ_ℓ α_ℓ c(ℓ)|².

    Raises:
        AutovalorFaltante: Si c no cubre el soporte de alpha
    """
    suma_primos, suma_cuadrados = amplitude_parts(alpha, c)
    return abs(suma_primos + suma_cuadrados) ** 2


@dataclass(frozen=True)
class SplitBoundReport:
    """Ambos lados de A <= 2|S_p|² + 2|S_{p²}|²."""
    lhs: float
    rhs: float
    suma_primos: complex
    suma_cuadrados: complex
    holds: bool

    def a_json(self) -> Dict[str, object]:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "suma_primos": {"re": self.suma_primos.real, "im": self.suma_primos.imag},
            "suma_cuadrados": {"re": self.suma_cuadrados.real, "im": self.suma_cuadrados.imag},
            "holds": self.holds,
        }


def split_bound_check(alpha: AmplifierCoefficients, c: EigenvalueTable) -> SplitBoundReport:
    """
    Evalúa la cota de división del amplificador.

    Returns:
        SplitBoundReport: holds es True si lhs <= rhs con tolerancia relativa 1e-12
    """
    suma_primos, suma_cuadrados = amplitude_parts(alpha, c)
    lhs = abs(suma_primos + suma_cuadrados) ** 2
    rhs = 2 * abs(suma_primos) ** 2 + 2 * abs(suma_cuadrados) ** 2
    holds = lhs <= rhs + TOLERANCIA_RELATIVA * max(1.0, rhs)
    if not holds:
        logger.warning(f"⚠️ Cota de división violada: {lhs} > {rhs}")
    return SplitBoundReport(lhs, rhs, suma_primos, suma_cuadrados, holds)


# ============================================================================
# TABLAS DE AUTOVALORES
# ============================================================================

def gl2_surrogate_table(L: float, seed: int = 0) -> EigenvalueTable:
    """
    Tabla sustituta de GL(2): λ(q) = 2cos θ_q aleatorio, λ(q²) = λ(q)² - 1.

    Con c₀ = c igual a esta tabla, cada primo aporta exactamente 1 a la suma,
    de modo que la amplitud es π(√L)².
    """
    primos = primos_soporte(L)
    rng = np.random.default_rng(seed)
    lambdas = 2 * np.cos(rng.uniform(0.0, np.pi, size=len(primos)))
    tabla: EigenvalueTable = {}
    for q, lam in zip(primos, lambdas):
        tabla[q] = complex(lam)
        tabla[q * q] = complex(lam * lam - 1)
    return tabla


def random_table(L: float, seed: int = 0) -> EigenvalueTable:
    """Tabla compleja aleatoria sobre primos <= √L y sus cuadrados."""
    primos = primos_soporte(L)
    rng = np.random.default_rng(seed)
    valores = rng.normal(size=(2 * len(primos), 2))
    indices = list(primos) + [q * q for q in primos]
    return {ell: complex(re, im) for ell, (re, im) in zip(indices, valores)}


def read_eigenvalue_table(ruta: Union[str, Path]) -> EigenvalueTable:
    """
    Lee una tabla "ℓ re [im]" separada por espacios; '#' inicia comentario.

    Raises:
        FileNotFoundError: Si el archivo no existe
        ValueError: Si hay índices no positivos o repetidos
    """
    ruta = Path(ruta)
    if not ruta.exists():
        raise FileNotFoundError(f"❌ No se encontró la tabla de autovalores: {ruta}")
    try:
        df = pd.read_csv(
            ruta,
            sep=r"\s+",
            comment="#",
            header=None,
            names=["ell", "re", "im"],
            engine="c",
            float_precision="round_trip",
        )
    except pd.errors.EmptyDataError:
        df = pd.DataFrame(columns=["ell", "re", "im"])
    df["im"] = df["im"].fillna(0.0)
    if df.empty:
        logger.warning(f"⚠️ Tabla vacía: {ruta}")
        return {}
    if (df["ell"] <= 0).any() or df["ell"].duplicated().any():
        raise ValueError(f"❌ Índices ℓ no positivos o repetidos en {ruta}")
    tabla = {int(ell): complex(re, im) for ell, re, im in df[["ell", "re", "im"]].itertuples(index=False)}
    logger.info(f"✅ {len(tabla)} autovalores leídos de {ruta}")
    return tabla


def write_eigenvalue_table(tabla: EigenvalueTable, ruta: Union[str, Path]) -> None:
    """Escribe la tabla en el formato de read_eigenvalue_table."""
    filas = [(ell, v.real, v.imag) for ell, v in sorted(tabla.items())]
    df = pd.DataFrame(filas, columns=["ell", "re", "im"])
    with open(ruta, "w", encoding="utf-8") as archivo:
        archivo.write("# ell re im\n")
        df.to_csv(archivo, sep=" ", header=False, index=False)
