"""
Módulo de matrices enteras - Núcleo aritmético exacto

Operaciones sobre matrices enteras n×n (n = 2 ó 3) con enteros de precisión
arbitraria: divisores determinantales, representantes reducidos de coclases
laterales y etiquetas canónicas de coclases dobles Λ g Λ con Λ = GL_n(Z).

Funciones principales:
    - det_divisors(): Vector determinantal (d_1, ..., d_n)
    - hnf_col(): Representante triangular superior reducido por columnas de Λ·M
    - hnf_row(): Representante triangular superior reducido por filas de M·Λ
    - canonical_label(): Etiqueta r·diag(1, s_1, s_2) de la coclase doble
    - same_double_coset(): Test de pertenencia a la misma coclase doble
    - random_unimodular(): Matriz unimodular aleatoria reproducible (tests)

Convenciones:
    - Las matrices son tuplas de tuplas de int (inmutables y hashables)
    - El signo ε = ±1 se descarta: -Id ∈ Λ, así que la etiqueta guarda r > 0
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple, Union

import numpy as np

# Alias de tipos
IntMatrix = Tuple[Tuple[int, ...], ...]
DetVector = Tuple[int, ...]
Racional = Union[int, Fraction]

DIMENSIONES_SOPORTADAS: Tuple[int, ...] = (2, 3)


# ============================================================================
# CONSTRUCCIÓN Y ARITMÉTICA BÁSICA
# ============================================================================

def as_matrix(filas: Sequence[Sequence[int]]) -> IntMatrix:
    """
    Convierte una secuencia de filas en IntMatrix validando forma y tipos.

    Args:
        filas: Filas de la matriz (listas, tuplas o arrays de numpy)

    Returns:
        IntMatrix: Matriz como tupla de tuplas de int

    Raises:
        ValueError: Si la matriz no es cuadrada de dimensión 2 ó 3
    """
    matriz = tuple(tuple(int(x) for x in fila) for fila in filas)
    n = len(matriz)
    if n not in DIMENSIONES_SOPORTADAS or any(len(fila) != n for fila in matriz):
        raise ValueError(f"❌ Se esperaba una matriz cuadrada 2×2 ó 3×3, se recibió: {matriz}")
    return matriz


def identity(n: int) -> IntMatrix:
    """Matriz identidad n×n."""
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def diagonal_matrix(entradas: Sequence[int]) -> IntMatrix:
    """Matriz diagonal con las entradas dadas."""
    n = len(entradas)
    return tuple(tuple(int(entradas[i]) if i == j else 0 for j in range(n)) for i in range(n))


def anti_diagonal(n: int) -> IntMatrix:
    """Matriz W con unos en la antidiagonal."""
    return tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n))


def transpose(A: IntMatrix) -> IntMatrix:
    return tuple(zip(*A))


def mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Producto exacto A·B."""
    columnas = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(fila, col)) for col in columnas) for fila in A)


def determinant(A: IntMatrix) -> int:
    """Determinante exacto (n = 2 ó 3)."""
    if len(A) == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    (a, b, c), (d, e, f), (g, h, i) = A
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _menores_2x2(A: IntMatrix) -> List[int]:
    """Los nueve menores 2×2 de una matriz 3×3."""
    menores: List[int] = []
    for f1 in range(3):
        for f2 in range(f1 + 1, 3):
            for c1 in range(3):
                for c2 in range(c1 + 1, 3):
                    menores.append(A[f1][c1] * A[f2][c2] - A[f1][c2] * A[f2][c1])
    return menores


# ============================================================================
# DIVISORES DETERMINANTALES
# ============================================================================

def det_divisors(M: IntMatrix) -> DetVector:
    """
    Calcula el vector determinantal de una matriz entera no singular.

    d_1 es el mcd de las entradas, d_2 (n = 3) el mcd de los menores 2×2
    y d_n el valor absoluto del determinante. Siempre d_k | d_{k+1}.

    Args:
        M: Matriz entera n×n

    Returns:
        DetVector: Tupla (d_1, ..., d_n) de enteros positivos

    Raises:
        ValueError: Si la matriz es singular

    Example:
        >>> det_divisors(((5, 1, 0), (0, 5, 0), (0, 0, 5)))
        (1, 5, 125)
    """
    det = determinant(M)
    if det == 0:
        raise ValueError(f"❌ Matriz singular, no tiene vector determinantal: {M}")
    d1 = gcd(*(x for fila in M for x in fila))
    if len(M) == 2:
        return (d1, abs(det))
    return (d1, gcd(*_menores_2x2(M)), abs(det))


def elementary_divisors(d: DetVector) -> Tuple[int, ...]:
    """Divisores elementales e_k = d_k / d_{k-1} a partir del vector determinantal."""
    anteriores = (1,) + tuple(d[:-1])
    return tuple(dk // dprev for dk, dprev in zip(d, anteriores))


# ============================================================================
# REPRESENTANTES REDUCIDOS (HERMITE)
# ============================================================================

def hnf_col(M: IntMatrix) -> IntMatrix:
    """
    Representante triangular superior reducido por columnas de la coclase Λ·M.

    Sólo usa operaciones de fila (multiplicación por Λ a la izquierda). El
    resultado [[a,d,e],[0,b,f],[0,0,c]] tiene diagonal positiva, 0 <= d < b
    y 0 <= e, f < c; es único en la coclase.

    Args:
        M: Matriz entera no singular

    Returns:
        IntMatrix: Representante reducido

    Raises:
        ValueError: Si la matriz es singular
    """
    n = len(M)
    H = [list(fila) for fila in M]

    for col in range(n):
        # Euclides sobre la columna, filas col..n-1
        while True:
            no_nulas = [i for i in range(col, n) if H[i][col] != 0]
            if not no_nulas:
                raise ValueError(f"❌ Matriz singular, no admite forma reducida: {M}")
            pivote = min(no_nulas, key=lambda i: abs(H[i][col]))
            H[col], H[pivote] = H[pivote], H[col]
            terminado = True
            for i in range(col + 1, n):
                if H[i][col] != 0:
                    q = H[i][col] // H[col][col]
                    H[i] = [x - q * y for x, y in zip(H[i], H[col])]
                    if H[i][col] != 0:
                        terminado = False
            if terminado:
                break
        if H[col][col] < 0:
            H[col] = [-x for x in H[col]]

    # Reducción de las entradas por encima de cada pivote
    for col in range(1, n):
        pivote = H[col][col]
        for i in range(col):
            q = H[i][col] // pivote
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[col])]

    return tuple(tuple(fila) for fila in H)


def hnf_row(M: IntMatrix) -> IntMatrix:
    """
    Representante triangular superior reducido por filas de la coclase M·Λ.

    Se obtiene como W·ᵗhnf_col(W·ᵗM·W)·W con W la antidiagonal. El resultado
    [[a,d,e],[0,b,f],[0,0,c]] cumple 0 <= d, e < a y 0 <= f < b.

    Args:
        M: Matriz entera no singular

    Returns:
        IntMatrix: Representante reducido por filas
    """
    W = anti_diagonal(len(M))
    H = hnf_col(mat_mul(mat_mul(W, transpose(M)), W))
    return mat_mul(mat_mul(W, transpose(H)), W)


def dual_representative(delta: IntMatrix) -> IntMatrix:
    """W·ᵗδ·W: lleva representantes derechos a izquierdos (y viceversa)."""
    W = anti_diagonal(len(delta))
    return mat_mul(mat_mul(W, transpose(delta)), W)


# ============================================================================
# ETIQUETAS CANÓNICAS
# ============================================================================

@dataclass(frozen=True, order=True)
class CosetLabel:
    """
    Nombre canónico de una coclase doble: r·diag(1, s_1, ..., s_{n-1}).

    Attributes:
        r: Racional positivo reducido
        s: Cadena de enteros positivos con s_k | s_{k+1}
    """
    r: Fraction
    s: Tuple[int, ...]

    def __post_init__(self) -> None:
        r = Fraction(self.r)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if r <= 0:
            raise ValueError(f"❌ La parte escalar de la etiqueta debe ser positiva: {r}")
        if len(self.s) + 1 not in DIMENSIONES_SOPORTADAS:
            raise ValueError(f"❌ Etiqueta de dimensión no soportada: s={self.s}")
        cadena = (1,) + self.s
        if any(x <= 0 for x in self.s) or any(b % a for a, b in zip(cadena, cadena[1:])):
            raise ValueError(f"❌ La cadena s debe cumplir s_k | s_(k+1): {self.s}")

    @property
    def n(self) -> int:
        return len(self.s) + 1

    def diagonal(self) -> Tuple[Fraction, ...]:
        """Entradas de r·diag(1, s_1, ...)."""
        return tuple(self.r * x for x in (1,) + self.s)

    def is_integral(self) -> bool:
        return self.r.denominator == 1

    def is_scalar(self) -> bool:
        return all(x == 1 for x in self.s)

    def primitive(self) -> "CosetLabel":
        """La misma cadena con r = 1."""
        return CosetLabel(Fraction(1), self.s)

    def scaled(self, q: Racional) -> "CosetLabel":
        """Etiqueta de q·g: sólo cambia la parte escalar."""
        return CosetLabel(self.r * Fraction(q), self.s)

    def matrix(self) -> IntMatrix:
        """Representante diagonal entero; exige r entero."""
        if not self.is_integral():
            raise ValueError(f"❌ La etiqueta {self} no es entera")
        return diagonal_matrix([int(x) for x in self.diagonal()])

    def __str__(self) -> str:
        return "diag(" + ",".join(str(x) for x in self.diagonal()) + ")"


def canonical_label(M: IntMatrix, scale: Racional = 1) -> CosetLabel:
    """
    Etiqueta canónica de la coclase doble Λ·(scale·M)·Λ.

    Para M entera con vector determinantal (d_1, d_2, d_3):
    r = d_1·scale, s_1 = d_2/d_1², s_2 = d_3/(d_1·d_2); de modo que
    r·diag(1, s_1, s_2) tiene vector (r, r²s_1, r³s_1s_2) ajustado por escala.

    Args:
        M: Matriz entera no singular
        scale: Racional positivo que multiplica a M

    Returns:
        CosetLabel: Etiqueta (r, s)

    Example:
        >>> str(canonical_label(((5, 1, 0), (0, 5, 0), (0, 0, 5))))
        'diag(1,5,25)'
    """
    escala = Fraction(scale)
    if escala <= 0:
        raise ValueError(f"❌ La escala debe ser un racional positivo: {scale}")
    e = elementary_divisors(det_divisors(M))
    return CosetLabel(escala * e[0], tuple(ek // e[0] for ek in e[1:]))


def label_of_diagonal(*entradas: int) -> CosetLabel:
    """
    Etiqueta de diag(entradas), en cualquier orden.

    Example:
        >>> str(label_of_diagonal(2, 2, 16))
        'diag(2,2,16)'
    """
    return canonical_label(diagonal_matrix(entradas))


def same_double_coset(A: IntMatrix, B: IntMatrix) -> bool:
    """
    Indica si A y B están en la misma coclase doble Λ A Λ.

    Criterio: igualdad de los vectores determinantales.

    Raises:
        ValueError: Si las dimensiones difieren o alguna matriz es singular
    """
    if len(A) != len(B):
        raise ValueError(f"❌ Dimensiones distintas: {len(A)} y {len(B)}")
    return det_divisors(A) == det_divisors(B)


# ============================================================================
# GENERADORES DE Λ Y MATRICES UNIMODULARES ALEATORIAS
# ============================================================================

def unimodular_generators(n: int) -> List[IntMatrix]:
    """
    Generadores de Λ = GL_n(Z): elementales E_ij(±1), permutaciones de dos
    filas y diag(-1, 1, ..., 1).
    """
    generadores: List[IntMatrix] = []
    base = [list(fila) for fila in identity(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for signo in (1, -1):
                E = [fila[:] for fila in base]
                E[i][j] = signo
                generadores.append(as_matrix(E))
    for i in range(n):
        for j in range(i + 1, n):
            P = [fila[:] for fila in base]
            P[i], P[j] = P[j], P[i]
            generadores.append(as_matrix(P))
    D = [fila[:] for fila in base]
    D[0][0] = -1
    generadores.append(as_matrix(D))
    return generadores


def random_unimodular(seed: int, steps: int, n: int = 3) -> IntMatrix:
    """
    Producto reproducible de `steps` generadores de Λ elegidos al azar.

    Args:
        seed: Semilla del generador aleatorio
        steps: Número de factores (0 da la identidad)
        n: Dimensión

    Returns:
        IntMatrix: Matriz con |det| = 1
    """
    if steps < 0:
        raise ValueError(f"❌ steps debe ser >= 0: {steps}")
    generadores = unimodular_generators(n)
    rng = np.random.default_rng(seed)
    U = identity(n)
    for indice in rng.integers(0, len(generadores), size=steps):
        U = mat_mul(U, generadores[int(indice)])
    return U
