from fractions import Fraction
from itertools import combinations

import pytest

import Hecke.hecke as hecke
from Hecke.errores import ErrorConsistencia
from Hecke.hecke import (
    HeckeElement,
    compose_normalized,
    convolve,
    coprime_product,
    expected_hall,
    expected_intro_1,
    expected_intro_2,
    expected_lin,
    gl2_identity,
    hall_coefficient,
    identity_element,
    label_to_partition,
    multiplicity,
    normalized_operator,
    partition_to_type,
    product_support,
    reduce_scalars,
    verify_corollary_b,
    verify_theorem_a,
)
from Hecke.intmat import CosetLabel, label_of_diagonal

ETIQUETAS_CONMUTACION = [(1, 1, 2), (1, 2, 2), (1, 2, 4), (1, 1, 4), (1, 4, 4)]


# ============================================================================
# HeckeElement
# ============================================================================

def test_elemento_aritmetica(diag):
    a = HeckeElement.de({diag(1, 1, 2): 1, diag(2, 2, 2): 3})
    b = HeckeElement.de({diag(2, 2, 2): -3, diag(1, 2, 2): Fraction(1, 2)})
    suma = a + b
    assert suma.as_dict() == {diag(1, 1, 2): 1, diag(1, 2, 2): Fraction(1, 2)}
    assert (a - a).terms == ()
    assert a.scale(2).coefficient(diag(2, 2, 2)) == 6
    assert a.coefficient(diag(1, 4, 4)) == 0
    assert HeckeElement.de({diag(1, 1, 2): 0}) == HeckeElement()


def test_elemento_texto():
    assert str(expected_intro_1(2)) == "[diag(1,2,4)] + 7·[diag(2,2,2)]"
    assert str(identity_element()) == "Id"
    assert str(HeckeElement()) == "0"


# ============================================================================
# Productos de referencia
# ============================================================================

@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_producto_1_1_p_por_1_p_p(p):
    producto = convolve(label_of_diagonal(1, 1, p), label_of_diagonal(1, p, p))
    assert producto == expected_intro_1(p)


@pytest.mark.parametrize("p", [2, 3])
def test_cuadrado_de_1_p_p2(p):
    g = label_of_diagonal(1, p, p * p)
    producto = convolve(g, g, verify=True)
    assert producto == expected_intro_2(p)
    assert len(producto) == 5


def test_cuadrado_de_1_p_p2_en_5():
    g = label_of_diagonal(1, 5, 25)
    assert convolve(g, g) == expected_intro_2(5)


def test_cuadrado_en_2_coeficientes_explicitos(diag):
    producto = convolve(diag(1, 2, 4), diag(1, 2, 4))
    assert producto.as_dict() == {
        diag(1, 4, 16): 1,
        diag(1, 8, 8): 3,
        diag(2, 2, 16): 3,
        diag(2, 4, 8): 9,
        diag(4, 4, 4): 42,
    }


# ============================================================================
# Multiplicidades y soporte
# ============================================================================

@pytest.mark.parametrize("formula", [1, 2, 3])
def test_multiplicidad_tres_formulas(diag, formula):
    g1, g2 = diag(1, 1, 2), diag(1, 2, 2)
    assert multiplicity(g1, g2, diag(2, 2, 2), formula) == 7
    assert multiplicity(g1, g2, diag(1, 2, 4), formula) == 1
    assert multiplicity(g1, g2, diag(1, 1, 8), formula) == 0
    assert multiplicity(g1, g2, diag(1, 1, 2), formula) == 0


def test_multiplicidad_formula_invalida(diag):
    with pytest.raises(ValueError):
        multiplicity(diag(1, 1, 2), diag(1, 1, 2), diag(1, 2, 2), formula=4)


def test_multiplicidad_con_escalares(diag):
    assert multiplicity(diag(3, 3, 6), diag(1, 2, 2), diag(6, 6, 6)) == 7
    assert multiplicity(diag(3, 3, 6), diag(1, 2, 2), diag(2, 2, 2)) == 0


def test_product_support(diag):
    assert product_support(diag(1, 1, 2), diag(1, 2, 2)) == {diag(1, 2, 4), diag(2, 2, 2)}
    assert product_support(diag(1, 1, 1), diag(1, 3, 9)) == {diag(1, 3, 9)}
    assert product_support(diag(1, 1, 3), diag(1, 1, 3)) == {diag(1, 1, 9), diag(1, 3, 3)}


def test_dimensiones_distintas():
    with pytest.raises(ValueError):
        convolve(label_of_diagonal(1, 2), label_of_diagonal(1, 1, 2))


# ============================================================================
# Leyes del álgebra
# ============================================================================

def test_ley_escalar(diag):
    assert convolve(diag(2, 2, 2), diag(1, 2, 4)) == HeckeElement.basis(diag(2, 4, 8))
    mitad = CosetLabel(Fraction(1, 2), (1, 1))
    assert convolve(diag(1, 3, 9), mitad) == HeckeElement.basis(CosetLabel(Fraction(1, 2), (3, 9)))
    assert convolve(diag(1, 1, 1), diag(1, 1, 5)) == HeckeElement.basis(diag(1, 1, 5))


def test_escalares_se_factorizan(diag):
    base = convolve(diag(1, 1, 2), diag(1, 2, 2))
    escalado = convolve(diag(3, 3, 6), diag(5, 10, 10))
    assert escalado == HeckeElement.de({g.scaled(15): c for g, c in base.terms})


@pytest.mark.parametrize("a, b", list(combinations(ETIQUETAS_CONMUTACION, 2)))
def test_conmutatividad(a, b):
    g1, g2 = label_of_diagonal(*a), label_of_diagonal(*b)
    assert convolve(g1, g2) == convolve(g2, g1)


def test_ley_de_grados(diag):
    """deg(g₁)·deg(g₂) = Σ m·deg(h); verify=True lanza si no se cumple."""
    for a, b in [((1, 1, 2), (1, 1, 4)), ((1, 2, 2), (1, 4, 4)), ((1, 1, 3), (1, 3, 9))]:
        convolve(diag(*a), diag(*b), verify=True)


def test_inconsistencia_detectada(monkeypatch, diag):
    real = hecke.diagonal_degree

    def grado_alterado(diagonal):
        if tuple(diagonal) == (2, 2, 2):
            return 2
        return real(diagonal)

    monkeypatch.setattr(hecke, "diagonal_degree", grado_alterado)
    with pytest.raises(ErrorConsistencia):
        convolve(diag(1, 1, 2), diag(1, 2, 2))


# ============================================================================
# Ley coprima
# ============================================================================

def test_producto_coprimo(diag):
    assert coprime_product(diag(1, 2, 2), diag(1, 1, 3)) == HeckeElement.basis(diag(1, 2, 6))
    assert coprime_product(diag(1, 2, 4), diag(1, 3, 9)) == HeckeElement.basis(diag(1, 6, 36))
    assert coprime_product(diag(1, 1, 1), diag(1, 1, 3)) == HeckeElement.basis(diag(1, 1, 3))
    assert coprime_product(diag(2, 2, 4), diag(1, 1, 3)) == HeckeElement.basis(diag(2, 2, 12))


def test_coprimo_igual_a_convolucion(diag):
    g1, g2 = diag(1, 2, 2), diag(1, 1, 3)
    assert convolve(g1, g2) == coprime_product(g1, g2)
    assert convolve(diag(1, 1, 2), diag(1, 1, 3)) == coprime_product(diag(1, 1, 2), diag(1, 1, 3))


def test_coprimo_rechaza_primo_compartido(diag):
    with pytest.raises(ValueError):
        coprime_product(diag(1, 2, 2), diag(1, 1, 2))
    with pytest.raises(ValueError):
        coprime_product(diag(1, 1, 6), diag(1, 1, 5))


# ============================================================================
# Coeficientes de Hall
# ============================================================================

@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("lam", [(4, 2, 0), (3, 3, 0), (4, 1, 1), (3, 2, 1), (2, 2, 2)])
def test_hall_210_210(p, lam):
    assert hall_coefficient((2, 1, 0), (2, 1, 0), lam, p) == expected_hall(lam, p)


@pytest.mark.parametrize("lam", [(4, 2, 0), (3, 3, 0), (4, 1, 1), (3, 2, 1), (2, 2, 2)])
def test_hall_210_210_en_5(lam):
    assert hall_coefficient((2, 1, 0), (2, 1, 0), lam, 5) == expected_hall(lam, 5)


def test_hall_valores():
    assert hall_coefficient((2, 1, 0), (2, 1, 0), (3, 2, 1), 2) == 9
    assert hall_coefficient((2, 1, 0), (2, 1, 0), (2, 2, 2), 3) == 156
    assert hall_coefficient((1,), (1,), (1, 1), 2) == 3
    assert hall_coefficient((1,), (1,), (2,), 5) == 1
    # |λ| distinto de |μ| + |ν|
    assert hall_coefficient((2, 1, 0), (2, 1, 0), (3, 2, 0), 2) == 0
    assert expected_hall((5, 1), 2) == 0


def test_particiones():
    assert partition_to_type((2, 1), 3).alpha == (0, 1, 2)
    assert partition_to_type((4, 1, 1), 2).diagonal == (2, 2, 16)
    assert label_to_partition(label_of_diagonal(2, 4, 8), 2) == (3, 2, 1)
    with pytest.raises(ValueError):
        partition_to_type((1, 2), 2)
    with pytest.raises(ValueError):
        label_to_partition(label_of_diagonal(1, 2, 6), 2)


# ============================================================================
# Operadores normalizados y composiciones
# ============================================================================

def test_reduce_scalars(diag):
    elemento = HeckeElement.de({diag(2, 2, 2): 3, diag(1, 1, 1): 1, diag(2, 4, 8): 1})
    assert reduce_scalars(elemento) == HeckeElement.de({diag(1, 1, 1): 4, diag(1, 2, 4): 1})


def test_normalized_operator(diag):
    assert normalized_operator(4) == HeckeElement.de({diag(1, 1, 4): Fraction(1, 4), diag(1, 2, 2): Fraction(1, 4)})
    assert normalized_operator(8) == HeckeElement.de(
        {diag(1, 1, 8): Fraction(1, 8), diag(1, 2, 4): Fraction(1, 8), diag(2, 2, 2): Fraction(1, 8)}
    )
    assert normalized_operator(6, n=2) == HeckeElement.de({label_of_diagonal(1, 6): Fraction(1, 6)})
    assert normalized_operator(1) == identity_element()
    with pytest.raises(ValueError):
        normalized_operator(0)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_identidad_gl2(p):
    assert gl2_identity(p) == identity_element(2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cuadrado_gl2(p):
    g = label_of_diagonal(1, p)
    esperado = HeckeElement.de({label_of_diagonal(1, p * p): 1, label_of_diagonal(p, p): p + 1})
    assert convolve(g, g, verify=True) == esperado


@pytest.mark.parametrize("p, q", [(2, 2), (3, 3), (2, 3), (3, 2)])
@pytest.mark.parametrize("which", ["lin2", "lin6"])
def test_compose_normalized(p, q, which):
    assert compose_normalized(p, q, which) == expected_lin(p, q, which)


def test_compose_normalized_con_normalizacion(diag):
    assert compose_normalized(2, 3, "lin2", normalized=True) == HeckeElement.de({diag(1, 2, 6): Fraction(1, 6)})
    assert compose_normalized(2, 2, "lin6", normalized=True) == expected_lin(2, 2, "lin6").scale(Fraction(1, 16))


def test_compose_normalized_rechaza_entradas():
    with pytest.raises(ValueError):
        compose_normalized(2, 3, "lin4")
    with pytest.raises(ValueError):
        compose_normalized(4, 3, "lin2")


# ============================================================================
# Suites
# ============================================================================

@pytest.mark.parametrize("p", [2, 3])
def test_verify_theorem_a(p):
    reporte = verify_theorem_a(p)
    assert reporte.ok, reporte.fallidas
    assert len(reporte.afirmaciones) == 14


def test_verify_theorem_a_en_5():
    assert verify_theorem_a(5).ok


@pytest.mark.parametrize("p, q", [(2, 2), (3, 3), (2, 3), (3, 2)])
def test_verify_corollary_b(p, q):
    reporte = verify_corollary_b(p, q)
    assert reporte.ok, reporte.fallidas
    assert len(reporte.afirmaciones) == (2 if p == q else 3)
