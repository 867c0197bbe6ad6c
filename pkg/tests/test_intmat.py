from fractions import Fraction

import pytest

from Hecke.intmat import (
    CosetLabel,
    canonical_label,
    det_divisors,
    determinant,
    diagonal_matrix,
    dual_representative,
    hnf_col,
    hnf_row,
    identity,
    label_of_diagonal,
    mat_mul,
    random_unimodular,
    same_double_coset,
)

MATRIZ_5 = ((5, 1, 0), (0, 5, 0), (0, 0, 5))

DIAGONALES_3 = [(1, 1, 5), (1, 2, 4), (2, 6, 12), (1, 3, 27), (4, 4, 8), (1, 5, 25)]
DIAGONALES_2 = [(1, 5), (2, 6), (1, 8), (3, 9)]


def _sandwich(diagonal, semilla, pasos=8):
    n = len(diagonal)
    U = random_unimodular(semilla, pasos, n)
    V = random_unimodular(semilla + 10_000, pasos, n)
    return mat_mul(mat_mul(U, diagonal_matrix(diagonal)), V)


# ============================================================================
# det_divisors
# ============================================================================

def test_det_divisors_ejemplos():
    assert det_divisors(diagonal_matrix((1, 1, 5))) == (1, 1, 5)
    assert det_divisors(identity(3)) == (1, 1, 1)
    assert det_divisors(MATRIZ_5) == (1, 5, 125)
    assert det_divisors(((2, 1), (0, 3))) == (1, 6)


def test_det_divisors_rechaza_singular():
    with pytest.raises(ValueError):
        det_divisors(((1, 2, 3), (2, 4, 6), (0, 0, 1)))


@pytest.mark.parametrize("n, diagonales", [(3, DIAGONALES_3), (2, DIAGONALES_2)])
def test_det_divisors_invariante_unimodular(n, diagonales):
    fallos = 0
    for semilla in range(1000):
        diagonal = diagonales[semilla % len(diagonales)]
        M = _sandwich(diagonal, semilla)
        d = det_divisors(M)
        if d != det_divisors(diagonal_matrix(diagonal)):
            fallos += 1
        assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert fallos == 0


# ============================================================================
# hnf_col / hnf_row
# ============================================================================

def _es_reducida_por_columnas(H):
    n = len(H)
    if any(H[i][j] != 0 for i in range(n) for j in range(i)):
        return False
    if any(H[i][i] <= 0 for i in range(n)):
        return False
    return all(0 <= H[i][j] < H[j][j] for j in range(n) for i in range(j))


def test_hnf_col_idempotente():
    H = ((2, 1, 3), (0, 3, 4), (0, 0, 5))
    assert hnf_col(H) == H


def test_hnf_col_absorbe_permutacion():
    P = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert hnf_col(mat_mul(P, diagonal_matrix((1, 1, 5)))) == diagonal_matrix((1, 1, 5))


@pytest.mark.parametrize("semilla", range(200))
def test_hnf_col_invariante_por_izquierda(semilla):
    M = _sandwich(DIAGONALES_3[semilla % len(DIAGONALES_3)], semilla)
    H = hnf_col(M)
    assert _es_reducida_por_columnas(H)
    assert hnf_col(H) == H
    U = random_unimodular(semilla + 500, 6)
    assert hnf_col(mat_mul(U, M)) == H
    assert abs(determinant(H)) == abs(determinant(M))


def test_hnf_row_deja_fijos_los_reducidos_por_filas():
    tabla = [
        ((1, 0, 0), (0, 2, 0), (0, 0, 2)),
        ((2, 0, 1), (0, 2, 1), (0, 0, 1)),
        ((2, 1, 0), (0, 1, 0), (0, 0, 2)),
    ]
    for R in tabla:
        assert hnf_row(R) == R


@pytest.mark.parametrize("semilla", range(50))
def test_hnf_row_y_hnf_col_en_la_misma_coclase_doble(semilla):
    M = _sandwich(DIAGONALES_3[semilla % len(DIAGONALES_3)], semilla)
    R = hnf_row(M)
    assert canonical_label(R) == canonical_label(hnf_col(M))
    assert hnf_row(mat_mul(M, random_unimodular(semilla, 5))) == R
    # Reducida por filas: 0 <= d, e < a y 0 <= f < b
    assert 0 <= R[0][1] < R[0][0] and 0 <= R[0][2] < R[0][0] and 0 <= R[1][2] < R[1][1]


def test_dual_representative_es_involucion():
    delta = ((2, 1, 3), (0, 3, 4), (0, 0, 5))
    assert dual_representative(delta) == ((5, 4, 3), (0, 3, 1), (0, 0, 2))
    assert dual_representative(dual_representative(delta)) == delta


# ============================================================================
# canonical_label
# ============================================================================

def test_canonical_label_ejemplos():
    assert canonical_label(diagonal_matrix((1, 5, 25))) == CosetLabel(Fraction(1), (5, 25))
    assert canonical_label(diagonal_matrix((5, 5, 5))) == CosetLabel(Fraction(5), (1, 1))
    assert canonical_label(MATRIZ_5) == CosetLabel(Fraction(1), (5, 25))


def test_canonical_label_escala_solo_mueve_r():
    M = _sandwich((2, 6, 12), 7)
    base = canonical_label(M)
    for q in (Fraction(1, 2), Fraction(3), Fraction(5, 7)):
        escalada = canonical_label(M, q)
        assert escalada.r == base.r * q
        assert escalada.s == base.s


def test_label_of_diagonal_ordena_entradas():
    assert str(label_of_diagonal(2, 2, 16)) == "diag(2,2,16)"
    assert label_of_diagonal(4, 1, 2) == label_of_diagonal(1, 2, 4)


def test_coset_label_valida_cadena():
    with pytest.raises(ValueError):
        CosetLabel(Fraction(1), (2, 3))
    with pytest.raises(ValueError):
        CosetLabel(Fraction(-1), (1, 2))
    etiqueta = CosetLabel(Fraction(3, 2), (2, 4))
    assert not etiqueta.is_integral()
    assert etiqueta.primitive() == CosetLabel(Fraction(1), (2, 4))
    assert etiqueta.scaled(2).matrix() == diagonal_matrix((3, 6, 12))


# ============================================================================
# same_double_coset / random_unimodular
# ============================================================================

def test_same_double_coset_ejemplos():
    assert same_double_coset(diagonal_matrix((1, 1, 5)), diagonal_matrix((5, 1, 1)))
    assert not same_double_coset(diagonal_matrix((1, 5, 25)), diagonal_matrix((5, 5, 5)))


@pytest.mark.parametrize("semilla", range(30))
def test_same_double_coset_sandwich(semilla):
    A = diagonal_matrix(DIAGONALES_3[semilla % len(DIAGONALES_3)])
    assert same_double_coset(_sandwich(DIAGONALES_3[semilla % len(DIAGONALES_3)], semilla), A)


def test_same_double_coset_rechaza_dimensiones_distintas():
    with pytest.raises(ValueError):
        same_double_coset(identity(2), identity(3))


def test_random_unimodular():
    assert random_unimodular(1, 0) == identity(3)
    for semilla in range(20):
        assert abs(determinant(random_unimodular(semilla, 25))) == 1
        assert abs(determinant(random_unimodular(semilla, 25, n=2))) == 1
    assert random_unimodular(42, 30) == random_unimodular(42, 30)


def test_enteros_grandes_sin_desborde():
    p = 7
    M = _sandwich((1, p**4, p**8), 3, pasos=12)
    assert det_divisors(M) == (1, p**4, p**12)
