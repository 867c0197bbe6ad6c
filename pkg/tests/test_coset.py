import logging

import pytest

from Hecke.config import configurar
from Hecke.coset import (
    CosetType,
    candidate_diagonals,
    candidate_shapes,
    closure_holds,
    count_by_diagonal,
    degree,
    diagonal_degree,
    enumerate_diagonal,
    enumerate_left_cosets,
    enumerate_right_cosets,
    estimate_cost,
    expected_degree,
    explicit_table,
    limpiar_cache,
    verify_appendix,
)
from Hecke.errores import PresupuestoExcedido, TablaNoDisponible
from Hecke.intmat import det_divisors, diagonal_matrix, unimodular_generators

TIPOS_CON_TABLA = [(0, 0, 1), (0, 1, 1), (0, 1, 2)]


# ============================================================================
# CosetType y formas candidatas
# ============================================================================

def test_coset_type_valida():
    with pytest.raises(ValueError):
        CosetType.of(4, 0, 0, 1)
    with pytest.raises(ValueError):
        CosetType.of(2, 1, 0, 0)
    with pytest.raises(ValueError):
        CosetType(3, 2, (0, 1))
    assert CosetType.of(3, 0, 1, 2).diagonal == (1, 3, 9)


def test_candidate_diagonals():
    assert candidate_diagonals(CosetType.of(2, 0, 0, 1)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert candidate_diagonals(CosetType.of(2, 0, 0, 0)) == [(0, 0, 0)]
    formas = candidate_diagonals(CosetType.of(2, 0, 1, 2))
    assert len(formas) == 7
    assert (1, 1, 1) in formas and (2, 1, 0) in formas


def test_candidate_shapes_compuestas():
    formas = candidate_shapes((1, 6, 36))
    assert len(formas) == 49
    assert all(a * b * c == 216 for a, b, c in formas)


def test_estimate_cost():
    assert estimate_cost((1, 5)) == 5 + 1
    # (1,1,2): 1·4 + 2·1 + 1·1
    assert estimate_cost((1, 1, 2)) == 7


# ============================================================================
# Enumeración
# ============================================================================

def test_enumera_R_1_1_2():
    t = CosetType.of(2, 0, 0, 1)
    reps = enumerate_right_cosets(t)
    assert len(reps) == 7
    assert reps.as_set() == explicit_table(t, "right").as_set()
    assert list(reps.reps) == sorted(reps.reps, key=lambda M: [x for fila in M for x in fila])


def test_enumera_diag_1_p_p2_en_3():
    assert len(enumerate_right_cosets(CosetType.of(3, 0, 1, 2))) == 156


def test_enumera_escalar():
    reps = enumerate_right_cosets(CosetType.of(2, 1, 1, 1))
    assert reps.reps == (diagonal_matrix((2, 2, 2)),)


def test_enumera_L_1_p_p_en_2():
    t = CosetType.of(2, 0, 1, 1)
    reps = enumerate_left_cosets(t)
    assert len(reps) == 7
    assert reps.as_set() == explicit_table(t, "left").as_set()


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("alpha", [(0, 0, 1), (0, 1, 1), (0, 1, 2), (0, 2, 4), (1, 2, 2)])
def test_representantes_distintos_con_el_vector_correcto(p, alpha):
    t = CosetType(3, p, alpha)
    objetivo = det_divisors(diagonal_matrix(t.diagonal))
    for side in ("right", "left"):
        reps = enumerate_diagonal(t.diagonal, side)
        assert len(reps.as_set()) == len(reps) == degree(t)
        assert all(det_divisors(M) == objetivo for M in reps)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("alpha", [(0, 0, 1), (0, 1, 1), (0, 1, 2)])
def test_cerradura_bajo_generadores(p, alpha):
    reps = enumerate_right_cosets(CosetType(3, p, alpha))
    assert closure_holds(reps, unimodular_generators(3))


# ============================================================================
# Grados
# ============================================================================

def test_grados_ejemplos():
    assert degree(CosetType.of(7, 0, 0, 1)) == 57
    assert degree(CosetType.of(2, 0, 2, 4)) == 672
    assert degree(CosetType.of(3, 0, 2, 4)) == 12636
    assert degree(CosetType.of(2, 0, 3, 3)) == 112
    assert degree(CosetType.of(3, 0, 3, 3)) == 1053
    assert degree(CosetType.of(3, 0, 0, 3)) == 1053


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize(
    "alpha",
    [(0, 0, 1), (0, 1, 1), (0, 1, 2), (1, 1, 1), (0, 2, 4), (0, 3, 3), (1, 1, 4), (1, 2, 3), (2, 2, 2)],
)
def test_nueve_grados(p, alpha):
    t = CosetType(3, p, alpha)
    assert degree(t) == expected_degree(t)


@pytest.mark.parametrize(
    "alpha",
    [(0, 0, 1), (0, 1, 1), (0, 1, 2), (1, 1, 1), (0, 2, 4), (0, 3, 3), (1, 1, 4), (1, 2, 3), (2, 2, 2)],
)
def test_nueve_grados_en_5(alpha):
    t = CosetType(3, 5, alpha)
    assert degree(t) == expected_degree(t)


def test_escalado_no_cambia_el_grado():
    assert degree(CosetType.of(3, 1, 1, 4)) == degree(CosetType.of(3, 0, 0, 3))
    assert degree(CosetType.of(3, 1, 2, 3)) == degree(CosetType.of(3, 0, 1, 2))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_grado_gl2(p):
    assert degree(CosetType.of(p, 0, 1)) == p + 1
    assert degree(CosetType.of(p, 0, 2)) == p * p + p


def test_grado_compuesto_es_multiplicativo():
    assert diagonal_degree((1, 6, 36)) == 42 * 156


def test_presupuesto_rechaza_p_11():
    with pytest.raises(PresupuestoExcedido) as error:
        degree(CosetType.of(11, 0, 2, 4))
    assert error.value.requerido > error.value.presupuesto
    assert "--budget" in str(error.value)


def test_presupuesto_configurable():
    configurar(presupuesto=10)
    with pytest.raises(PresupuestoExcedido):
        enumerate_right_cosets(CosetType.of(13, 0, 1, 2))


def test_enumeracion_paralela_coincide(monkeypatch):
    import Hecke.coset as coset

    limpiar_cache()
    monkeypatch.setattr(coset, "UMBRAL_PARALELO", 0)
    configurar(hilos=2)
    t = CosetType.of(3, 0, 1, 2)
    paralelo = enumerate_right_cosets(t)
    limpiar_cache()
    configurar(hilos=1)
    secuencial = enumerate_right_cosets(t)
    assert paralelo.reps == secuencial.reps
    assert len(paralelo) == 156


# ============================================================================
# Tablas explícitas
# ============================================================================

def test_tabla_R_1_p_p2_tiene_42_en_2():
    assert len(explicit_table(CosetType.of(2, 0, 1, 2), "right")) == 42
    assert len(explicit_table(CosetType.of(2, 0, 1, 1), "left")) == 7


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("alpha", TIPOS_CON_TABLA)
@pytest.mark.parametrize("side", ["right", "left"])
def test_tabla_igual_a_enumeracion(p, alpha, side):
    t = CosetType(3, p, alpha)
    tabla = explicit_table(t, side)
    assert len(tabla.as_set()) == len(tabla)
    assert tabla.as_set() == enumerate_diagonal(t.diagonal, side).as_set()


def test_tabla_no_disponible():
    with pytest.raises(TablaNoDisponible):
        explicit_table(CosetType.of(2, 0, 2, 4))


@pytest.mark.parametrize("p", [2, 3])
def test_desglose_por_forma(p):
    desglose = count_by_diagonal(CosetType(3, p, (0, 1, 2)))
    assert desglose == {
        (1, p, p * p): p**4,
        (1, p * p, p): p**3,
        (p, 1, p * p): p**3,
        (p, p, p): (p - 1) * (2 * p + 1),
        (p, p * p, 1): p,
        (p * p, 1, p): p,
        (p * p, p, 1): 1,
    }


@pytest.mark.parametrize("p", [2, 3])
def test_verify_appendix(p):
    reporte = verify_appendix(p)
    assert reporte.ok, reporte.fallidas
    assert len(reporte.afirmaciones) == 16


def test_enumeracion_registra_candidatos_por_forma(caplog):
    limpiar_cache()
    with caplog.at_level(logging.DEBUG, logger="Hecke.coset"):
        assert len(enumerate_diagonal((1, 1, 2))) == 7
    mensajes = [r.getMessage() for r in caplog.records]
    assert "diag(1, 1, 2), forma (1, 1, 2): 4 candidatos" in mensajes
    assert any("7 representantes" in m for m in mensajes)
