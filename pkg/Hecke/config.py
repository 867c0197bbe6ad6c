"""
Módulo de configuración y pool de procesos.

Lee la configuración de variables de entorno (archivo .env opcional) y
administra el pool de procesos que usan las enumeraciones paralelas.

Variables de entorno (todas opcionales):
    - HECKE_BUDGET: Máximo de evaluaciones de candidatos por enumeración (defecto 2e9)
    - HECKE_THREADS: Procesos de trabajo; 1 ejecuta en el proceso actual (defecto 1)
    - HECKE_LOG_LEVEL: Nivel de logging (defecto WARNING)

Funciones principales:
    - obtener_presupuesto() / obtener_hilos(): Valores vigentes
    - configurar(): Sobreescribe valores en tiempo de ejecución (flags de la CLI)
    - obtener_pool(): Devuelve instancia singleton del pool de procesos
    - pool_context(): Context manager para pools temporales
    - cerrar_pool(): Cierra el pool y libera los procesos
    - configurar_logging(): Configura el logging raíz
"""

import os
import logging
import atexit
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import Generator, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# === Cargar y validar variables de entorno ===
load_dotenv()

PRESUPUESTO_POR_DEFECTO: int = 2_000_000_000
NIVELES_LOG = ("DEBUG", "INFO", "WARNING", "ERROR")


def _leer_entero(nombre: str, defecto: int, minimo: int) -> int:
    valor = os.getenv(nombre)
    if valor is None or not valor.strip():
        return defecto
    try:
        # Se acepta notación "2e9"
        numero = int(float(valor)) if "e" in valor.lower() else int(valor)
    except ValueError:
        error_msg = f"❌ {nombre} debe ser un entero, se recibió: {valor!r}"
        logger.error(error_msg)
        raise EnvironmentError(error_msg)
    if numero < minimo:
        error_msg = f"❌ {nombre} debe ser >= {minimo}, se recibió: {numero}"
        logger.error(error_msg)
        raise EnvironmentError(error_msg)
    return numero


def _obtener_variables_entorno() -> tuple[int, int, str]:
    """
    Obtiene y valida las variables de entorno del motor.

    Returns:
        tuple[int, int, str]: Tupla con (PRESUPUESTO, HILOS, NIVEL_LOG)

    Raises:
        EnvironmentError: Si alguna variable tiene un valor inválido
    """
    presupuesto = _leer_entero("HECKE_BUDGET", PRESUPUESTO_POR_DEFECTO, 1)
    hilos = _leer_entero("HECKE_THREADS", 1, 1)
    nivel = os.getenv("HECKE_LOG_LEVEL", "WARNING").strip().upper()
    if nivel not in NIVELES_LOG:
        error_msg = f"❌ HECKE_LOG_LEVEL inválido: {nivel} (use {', '.join(NIVELES_LOG)})"
        logger.error(error_msg)
        raise EnvironmentError(error_msg)
    return presupuesto, hilos, nivel


# Cargar variables una vez al importar el módulo
HECKE_BUDGET, HECKE_THREADS, HECKE_LOG_LEVEL = _obtener_variables_entorno()

_presupuesto: int = HECKE_BUDGET
_hilos: int = HECKE_THREADS

# Pool singleton (se crea sólo cuando hay más de un hilo)
_pool: Optional[ProcessPoolExecutor] = None
_pool_hilos: int = 0


def configurar(presupuesto: Optional[int] = None, hilos: Optional[int] = None) -> None:
    """
    Sobreescribe presupuesto y/o hilos para el resto de la ejecución.

    Args:
        presupuesto: Nuevo límite de evaluaciones de candidatos
        hilos: Nuevo número de procesos de trabajo

    Raises:
        ValueError: Si algún valor no es positivo
    """
    global _presupuesto, _hilos
    if presupuesto is not None:
        if presupuesto < 1:
            raise ValueError(f"❌ El presupuesto debe ser positivo: {presupuesto}")
        _presupuesto = presupuesto
    if hilos is not None:
        if hilos < 1:
            raise ValueError(f"❌ El número de hilos debe ser positivo: {hilos}")
        if hilos != _hilos:
            cerrar_pool()
        _hilos = hilos
    logger.debug(f"Configuración vigente: presupuesto={_presupuesto}, hilos={_hilos}")


def obtener_presupuesto() -> int:
    """Presupuesto de evaluaciones de candidatos vigente."""
    return _presupuesto


def obtener_hilos() -> int:
    """Número de procesos de trabajo vigente."""
    return _hilos


def obtener_pool() -> ProcessPoolExecutor:
    """
    Devuelve una instancia global (singleton) del pool de procesos.

    Si el pool no existe o fue creado con otro número de hilos, crea uno nuevo.

    Returns:
        ProcessPoolExecutor: Pool con obtener_hilos() procesos
    """
    global _pool, _pool_hilos

    if _pool is not None and _pool_hilos == _hilos:
        return _pool

    cerrar_pool()
    try:
        _pool = ProcessPoolExecutor(max_workers=_hilos)
        _pool_hilos = _hilos
        logger.info(f"✅ Pool de {_hilos} procesos creado.")
    except Exception as e:
        logger.error(f"❌ Error al crear el pool de procesos: {e}")
        _pool = None
        raise
    return _pool


@contextmanager
def pool_context(hilos: Optional[int] = None) -> Generator[ProcessPoolExecutor, None, None]:
    """
    Context manager para un pool temporal, independiente del singleton.

    Cierra automáticamente el pool al salir del bloque with.

    Args:
        hilos: Procesos del pool. Defaults to obtener_hilos()

    Yields:
        ProcessPoolExecutor: Pool temporal listo para usar

    Raises:
        ValueError: Si hilos no es positivo
    """
    final_hilos = _hilos if hilos is None else hilos
    if final_hilos < 1:
        raise ValueError(f"❌ El número de hilos debe ser positivo: {final_hilos}")
    pool: Optional[ProcessPoolExecutor] = None
    try:
        pool = ProcessPoolExecutor(max_workers=final_hilos)
        logger.debug(f"Pool temporal de {final_hilos} procesos creado para contexto.")
        yield pool
    except Exception as e:
        logger.error(f"❌ Error en pool_context: {e}")
        raise
    finally:
        if pool is not None:
            pool.shutdown()
            logger.debug("Pool temporal cerrado.")


def cerrar_pool() -> None:
    """Cierra manualmente el pool singleton y libera sus procesos."""
    global _pool, _pool_hilos
    if _pool is not None:
        try:
            _pool.shutdown()
            logger.info("Pool de procesos cerrado.")
        except Exception as e:
            logger.error(f"❌ Error cerrando el pool: {e}")
        finally:
            _pool = None
            _pool_hilos = 0


def configurar_logging(nivel: Optional[str] = None) -> None:
    """
    Configura el logging raíz con el nivel de HECKE_LOG_LEVEL o el indicado.

    Args:
        nivel: Nivel explícito (DEBUG, INFO, WARNING, ERROR)
    """
    logging.basicConfig(
        level=(nivel or HECKE_LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


# Cierre automático al finalizar el programa
atexit.register(cerrar_pool)
