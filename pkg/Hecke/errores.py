"""
Excepciones del motor de álgebra de Hecke.

Todas llevan un mensaje listo para consola (prefijo ❌) y los datos
necesarios para que la interfaz decida el código de salida.

Excepciones:
    - PresupuestoExcedido: la enumeración pedida supera el presupuesto de candidatos
    - ErrorConsistencia: una verificación interna no cuadra (multiplicidad no entera, etc.)
    - AutovalorFaltante: la tabla de autovalores no cubre un índice requerido
    - TablaNoDisponible: no hay tabla explícita para el tipo pedido
"""

from typing import Optional


class PresupuestoExcedido(RuntimeError):
    """
    La enumeración requiere más evaluaciones de candidatos que el presupuesto.

    Attributes:
        requerido: Estimación de candidatos a evaluar
        presupuesto: Límite configurado
        caso: Descripción del caso que se rechazó
    """

    def __init__(self, requerido: int, presupuesto: int, caso: str = "") -> None:
        self.requerido = requerido
        self.presupuesto = presupuesto
        self.caso = caso
        detalle = f" ({caso})" if caso else ""
        super().__init__(
            f"❌ Presupuesto excedido{detalle}: se requieren ~{requerido:,} evaluaciones "
            f"y el presupuesto es {presupuesto:,}. Use --budget para ampliarlo."
        )


class ErrorConsistencia(ArithmeticError):
    """Una identidad que debe cumplirse exactamente ha fallado."""


class AutovalorFaltante(KeyError):
    """La tabla de autovalores no define el índice pedido."""

    def __init__(self, ell: int, origen: Optional[str] = None) -> None:
        self.ell = ell
        donde = f" en {origen}" if origen else ""
        super().__init__(f"❌ Falta el autovalor c({ell}){donde}")

    def __str__(self) -> str:
        return str(self.args[0])


class TablaNoDisponible(ValueError):
    """No existe tabla explícita de representantes para el tipo pedido."""
