"""Fixtures compartidas de los tests."""

import pytest

from Hecke.config import PRESUPUESTO_POR_DEFECTO, cerrar_pool, configurar
from Hecke.intmat import label_of_diagonal


@pytest.fixture(autouse=True)
def configuracion_limpia():
    """Cada test parte con el presupuesto por defecto y un solo proceso."""
    configurar(presupuesto=PRESUPUESTO_POR_DEFECTO, hilos=1)
    yield
    configurar(presupuesto=PRESUPUESTO_POR_DEFECTO, hilos=1)
    cerrar_pool()


@pytest.fixture
def diag():
    """Atajo para etiquetas: diag(1, 2, 4)."""
    return label_of_diagonal
