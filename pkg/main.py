"""
Motor de Álgebra de Hecke GL(3)/GL(2) - Interfaz de línea de comandos

Subcomandos:
- degree: Grado de una coclase doble diag(p^α)
- cosets: Representantes de coclases laterales (derechos o izquierdos)
- product: Producto de dos coclases dobles en la base del álgebra
- hall: Coeficientes de Hall evaluados en un primo
- verify: Suites de verificación (teorema-a, corolario-b, apéndice)
- fit: Interpolación del grado como polinomio en p
- amplifier: Coeficientes del amplificador y amplitud

Flags globales:
- --json / --csv: Salida para máquinas (por defecto, consola)
- --threads: Procesos de trabajo para las enumeraciones
- --budget: Máximo de candidatos por enumeración
- --seed: Semilla de las tablas aleatorias

Códigos de salida:
- 0 éxito, 1 verificación fallida, 2 presupuesto excedido, 64 uso incorrecto

Módulos integrados:
- Hecke.config: Configuración (.env) y pool de procesos
- Hecke.intmat / Hecke.coset / Hecke.hecke / Hecke.amplifier: Cálculo
- Hecke.reporte: Reportes y serialización
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, NoReturn, Optional, Sequence, Tuple

import sympy

from Hecke.amplifier import (
    amplitude,
    build_alpha,
    gl2_surrogate_table,
    primos_soporte,
    read_eigenvalue_table,
    split_bound_check,
)
from Hecke.config import configurar, configurar_logging
from Hecke.coset import (
    FORMULAS_GRADO,
    CosetType,
    degree,
    enumerate_left_cosets,
    enumerate_right_cosets,
    expected_degree,
    explicit_table,
    verify_appendix,
)
from Hecke.errores import (
    AutovalorFaltante,
    ErrorConsistencia,
    PresupuestoExcedido,
    TablaNoDisponible,
)
from Hecke.hecke import (
    HALL_210_210,
    HeckeElement,
    convolve,
    coprime_product,
    expected_hall,
    expected_intro_1,
    expected_intro_2,
    hall_coefficient,
    label_to_partition,
    partition_to_type,
    verify_corollary_b,
    verify_theorem_a,
)
from Hecke.reporte import Report, ReporteVerificacion, resumen

logger = logging.getLogger(__name__)

EXITO = 0
FALLO_VERIFICACION = 1
FALLO_PRESUPUESTO = 2
USO_INCORRECTO = 64

SUITES: Tuple[str, ...] = ("theorem-a", "corollary-b", "appendix", "all")


# ============================================================
# Utilidades de Parseo
# ============================================================

class UsoIncorrecto(Exception):
    """Argumentos inválidos; se traduce al código 64."""


class ParserHecke(argparse.ArgumentParser):
    """ArgumentParser que termina con código 64 ante errores de uso."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print(f"❌ {self.prog}: {message}", file=sys.stderr)
        sys.exit(USO_INCORRECTO)


def _enteros(texto: str) -> Tuple[int, ...]:
    """'0,1,2' -> (0, 1, 2)."""
    try:
        return tuple(int(v) for v in texto.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"lista de enteros inválida: {texto!r}")


def _pares(texto: str) -> List[Tuple[int, int]]:
    """'2:3,3:2' -> [(2, 3), (3, 2)]."""
    pares: List[Tuple[int, int]] = []
    for parte in texto.split(","):
        try:
            a, b = parte.split(":")
            pares.append((int(a), int(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"par p:q inválido: {parte!r}")
    return pares


def _presupuesto(texto: str) -> int:
    """Acepta '2000000' o '2e9'."""
    try:
        valor = int(float(texto)) if "e" in texto.lower() else int(texto)
    except ValueError:
        raise argparse.ArgumentTypeError(f"presupuesto inválido: {texto!r}")
    if valor < 1:
        raise argparse.ArgumentTypeError("el presupuesto debe ser positivo")
    return valor


def _tipo(n: int, p: int, alpha: Sequence[int]) -> CosetType:
    try:
        return CosetType(n, p, tuple(alpha))
    except ValueError as e:
        raise UsoIncorrecto(str(e))


def _filas_elemento(elemento: HeckeElement) -> List[Dict[str, str]]:
    return [{"etiqueta": str(g), "r": str(g.r), "s": ",".join(map(str, g.s)), "coef": str(c)} for g, c in elemento.terms]


def _report_de_suites(comando: str, entradas: Dict, reportes: List[ReporteVerificacion]) -> Report:
    filas = [fila for reporte in reportes for fila in reporte.filas()]
    return Report(
        comando,
        entradas,
        {"suites": reportes},
        ok=all(r.ok for r in reportes),
        tabla=filas,
    )


# ============================================================
# Subcomandos
# ============================================================

def cmd_degree(args: argparse.Namespace) -> Report:
    """Grado de diag(p^α) y, si hay fórmula conocida, su comparación."""
    t = _tipo(args.n, args.p, args.alpha)
    grado = degree(t)
    esperado = expected_degree(t)
    coincide = esperado is None or esperado == grado
    resultados: Dict[str, object] = {"degree": grado, "expected": esperado, "match": coincide}
    if esperado is not None:
        resultados["formula"] = str(FORMULAS_GRADO[t.normalized_alpha])
    return Report(
        "degree",
        {"n": args.n, "p": args.p, "alpha": list(t.alpha)},
        resultados,
        ok=coincide or not args.check,
    )


def cmd_cosets(args: argparse.Namespace) -> Report:
    """Representantes ordenados; con --check se comparan con la tabla explícita."""
    t = _tipo(args.n, args.p, args.alpha)
    reps = enumerate_right_cosets(t) if args.side == "right" else enumerate_left_cosets(t)
    resultados: Dict[str, object] = {"count": len(reps), "reps": reps}
    ok = True
    if args.check:
        try:
            tabla = explicit_table(t, args.side).as_set()
            faltan = sorted(tabla - reps.as_set())
            sobran = sorted(reps.as_set() - tabla)
            resultados["check"] = {"tabla": True, "faltan": faltan, "sobran": sobran}
            ok = not faltan and not sobran
        except TablaNoDisponible as e:
            logger.warning(str(e))
            resultados["check"] = {"tabla": False}
    filas = [{"i": i, "matriz": str([list(fila) for fila in M])} for i, M in enumerate(reps, start=1)]
    return Report(
        "cosets",
        {"n": args.n, "p": args.p, "alpha": list(t.alpha), "side": args.side},
        resultados,
        ok=ok,
        tabla=filas,
    )


def cmd_product(args: argparse.Namespace) -> Report:
    """Producto [diag(p^α₁)]∗[diag(q^α₂)] con comparación opcional."""
    q = args.q if args.q is not None else args.p
    t1 = _tipo(args.n, args.p, args.alpha1)
    t2 = _tipo(args.n, q, args.alpha2)
    g1, g2 = t1.label(), t2.label()

    if q != args.p:
        producto = coprime_product(g1, g2)
    else:
        producto = convolve(g1, g2, verify=args.verify)

    esperado: Optional[HeckeElement] = None
    if args.check:
        if q != args.p:
            esperado = convolve(g1, g2)
        elif {t1.alpha, t2.alpha} == {(0, 0, 1), (0, 1, 1)}:
            esperado = expected_intro_1(args.p)
        elif t1.alpha == t2.alpha == (0, 1, 2):
            esperado = expected_intro_2(args.p)
        else:
            logger.warning("⚠️ No hay identidad conocida para comparar este producto")

    resultados: Dict[str, object] = {"product": producto, "terms": len(producto)}
    if esperado is not None:
        resultados["expected"] = esperado
        resultados["match"] = esperado == producto
    return Report(
        "product",
        {"n": args.n, "p": args.p, "q": q, "alpha1": list(t1.alpha), "alpha2": list(t2.alpha)},
        resultados,
        ok=esperado is None or esperado == producto,
        tabla=_filas_elemento(producto),
    )


def cmd_hall(args: argparse.Namespace) -> Report:
    """g^λ_{μν}(p); sin --lam lista todos los λ con coeficiente no nulo."""
    try:
        t_mu = partition_to_type(args.mu, args.p)
        t_nu = partition_to_type(args.nu, args.p)
    except ValueError as e:
        raise UsoIncorrecto(str(e))

    if args.lam is not None:
        valores = {tuple(args.lam): hall_coefficient(args.mu, args.nu, args.lam, args.p)}
    else:
        producto = convolve(t_mu.label(), t_nu.label())
        valores = {label_to_partition(g, args.p): int(c) for g, c in producto.terms}

    comparar = args.check and tuple(args.mu) in ((2, 1, 0), (2, 1)) and tuple(args.nu) in ((2, 1, 0), (2, 1))
    filas = []
    ok = True
    for lam, valor in sorted(valores.items(), reverse=True):
        fila: Dict[str, object] = {"lambda": ",".join(map(str, lam)), "g": valor}
        if comparar:
            esperado = expected_hall(lam, args.p)
            clave = tuple(lam) + (0,) * (3 - len(lam))
            fila["polinomio"] = str(HALL_210_210.get(clave, 0))
            fila["esperado"] = esperado
            fila["match"] = esperado == valor
            ok = ok and esperado == valor
        filas.append(fila)
    return Report(
        "hall",
        {"mu": list(args.mu), "nu": list(args.nu), "lam": list(args.lam) if args.lam else None, "p": args.p},
        {"coefficients": filas},
        ok=ok,
        tabla=filas,
    )


def cmd_verify(args: argparse.Namespace) -> Report:
    """Ejecuta las suites pedidas para cada primo (y pares cruzados)."""
    suites = ("theorem-a", "corollary-b", "appendix") if args.suite == "all" else (args.suite,)
    reportes: List[ReporteVerificacion] = []
    for p in args.primes:
        if not sympy.isprime(p):
            raise UsoIncorrecto(f"❌ {p} no es primo")
    for suite in suites:
        if suite == "theorem-a":
            reportes += [verify_theorem_a(p) for p in args.primes]
        elif suite == "appendix":
            reportes += [verify_appendix(p) for p in args.primes]
        else:
            pares = [(p, p) for p in args.primes] + list(args.cross or [])
            reportes += [verify_corollary_b(p, q) for p, q in pares]
    for reporte in reportes:
        logger.info(resumen(reporte))
    return _report_de_suites(
        "verify",
        {"suite": args.suite, "primes": list(args.primes), "cross": [f"{p}:{q}" for p, q in args.cross or []]},
        reportes,
    )


def cmd_fit(args: argparse.Namespace) -> Report:
    """Interpola el grado de diag(p^α) en los primos dados."""
    if len(set(args.primes)) < 2:
        raise UsoIncorrecto("❌ Se necesitan al menos dos primos distintos para interpolar")
    n = len(args.alpha)
    puntos = []
    for p in sorted(set(args.primes)):
        puntos.append((p, degree(_tipo(n, p, args.alpha))))
    x = sympy.symbols("p")
    polinomio = sympy.expand(sympy.interpolate(puntos, x))
    coeficientes = sympy.Poly(polinomio, x).all_coeffs()
    enteros = all(c.is_integer for c in coeficientes)
    if sympy.degree(polinomio, x) >= len(puntos) - 1 and len(puntos) > 1:
        logger.warning("⚠️ El grado del polinomio agota los puntos; agregue primos para confirmarlo")

    resultados: Dict[str, object] = {
        "polynomial": str(polinomio),
        "coefficients": [str(c) for c in coeficientes],
        "integer_coefficients": enteros,
        "points": [{"p": p, "degree": d} for p, d in puntos],
    }
    ok = enteros or not args.check
    formula = FORMULAS_GRADO.get(tuple(a - args.alpha[0] for a in args.alpha))
    if args.check and formula is not None:
        coincide = sympy.expand(formula - polinomio) == 0
        resultados["expected"] = str(sympy.expand(formula))
        resultados["match"] = coincide
        ok = ok and coincide
    return Report(
        "fit",
        {"alpha": list(args.alpha), "primes": sorted(set(args.primes))},
        resultados,
        ok=ok,
        tabla=[{"p": p, "degree": d} for p, d in puntos],
    )


def cmd_amplifier(args: argparse.Namespace) -> Report:
    """Amplitud y cota de división; por defecto con la tabla sustituta de GL(2)."""
    sustituta = args.surrogate or args.table is None
    c0 = gl2_surrogate_table(args.L, args.seed) if sustituta else read_eigenvalue_table(args.table)
    c = read_eigenvalue_table(args.table_f) if args.table_f else c0
    alpha = build_alpha(args.L, c0)
    valor = amplitude(alpha, c)
    cota = split_bound_check(alpha, c)

    resultados: Dict[str, object] = {
        "support": alpha.support(),
        "coefficients": alpha,
        "amplitude": valor,
        "split_bound": cota,
    }
    ok = cota.holds or not args.check
    if sustituta and args.table_f is None:
        esperado = len(primos_soporte(args.L)) ** 2
        coincide = abs(valor - esperado) <= 1e-12 * max(1.0, esperado)
        resultados["expected"] = esperado
        resultados["match"] = coincide
        ok = ok and (coincide or not args.check)
    return Report(
        "amplifier",
        {"L": args.L, "seed": args.seed, "surrogate": sustituta, "table": args.table, "table_f": args.table_f},
        resultados,
        ok=ok,
    )


# ============================================================
# Construcción del Parser
# ============================================================

def construir_parser() -> ParserHecke:
    """Parser con flags globales y un subparser por comando."""
    parser = ParserHecke(prog="hecke", description="Motor de álgebra de Hecke GL(3)/GL(2)")
    formato = parser.add_mutually_exclusive_group()
    formato.add_argument("--json", action="store_true", help="Salida JSON determinista")
    formato.add_argument("--csv", action="store_true", help="Salida CSV")
    parser.add_argument("--threads", type=int, default=None, help="Procesos de trabajo")
    parser.add_argument("--budget", type=_presupuesto, default=None, help="Máximo de candidatos por enumeración")
    parser.add_argument("--seed", type=int, default=0, help="Semilla de tablas aleatorias")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    sub = parser.add_subparsers(dest="comando", required=True, parser_class=ParserHecke)

    p = sub.add_parser("degree", help="Grado de una coclase doble")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=_enteros, required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(funcion=cmd_degree)

    p = sub.add_parser("cosets", help="Representantes de coclases laterales")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=_enteros, required=True)
    p.add_argument("--side", choices=["right", "left"], default="right")
    p.add_argument("--check", action="store_true")
    p.set_defaults(funcion=cmd_cosets)

    p = sub.add_parser("product", help="Producto de coclases dobles")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--alpha1", type=_enteros, required=True)
    p.add_argument("--alpha2", type=_enteros, required=True)
    p.add_argument("--verify", action="store_true", help="Exige acuerdo de las tres fórmulas")
    p.add_argument("--check", action="store_true")
    p.set_defaults(funcion=cmd_product)

    p = sub.add_parser("hall", help="Coeficientes de Hall")
    p.add_argument("--mu", type=_enteros, required=True)
    p.add_argument("--nu", type=_enteros, required=True)
    p.add_argument("--lam", type=_enteros, default=None)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(funcion=cmd_hall)

    p = sub.add_parser("verify", help="Suites de verificación")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--primes", type=_enteros, default=(2,))
    p.add_argument("--cross", type=_pares, default=None, help="Pares p:q con p != q")
    p.set_defaults(funcion=cmd_verify)

    p = sub.add_parser("fit", help="Interpolación del grado en p")
    p.add_argument("--alpha", type=_enteros, required=True)
    p.add_argument("--primes", type=_enteros, required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(funcion=cmd_fit)

    p = sub.add_parser("amplifier", help="Amplificador y cota de división")
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--table", default=None, help="Autovalores c₀ de la forma objetivo")
    p.add_argument("--table-f", dest="table_f", default=None, help="Autovalores c de la forma evaluada")
    p.add_argument("--surrogate", action="store_true", help="Usar la tabla sustituta de GL(2)")
    p.add_argument("--check", action="store_true")
    p.set_defaults(funcion=cmd_amplifier)

    return parser


def emitir(reporte: Report, args: argparse.Namespace) -> None:
    if args.json:
        print(reporte.to_json())
    elif args.csv:
        print(reporte.to_csv(), end="")
    else:
        print(reporte.to_text())


# ============================================================
# Función Principal
# ============================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parsea argumentos, ejecuta el subcomando y devuelve el código de salida."""
    parser = construir_parser()
    args = parser.parse_args(argv)
    configurar_logging(args.log_level)

    try:
        configurar(presupuesto=args.budget, hilos=args.threads)
        funcion: Callable[[argparse.Namespace], Report] = args.funcion
        reporte = funcion(args)
    except PresupuestoExcedido as e:
        print(str(e), file=sys.stderr)
        return FALLO_PRESUPUESTO
    except ErrorConsistencia as e:
        print(str(e), file=sys.stderr)
        return FALLO_VERIFICACION
    except (UsoIncorrecto, AutovalorFaltante, FileNotFoundError, ValueError) as e:
        print(str(e) if str(e).startswith("❌") else f"❌ {e}", file=sys.stderr)
        return USO_INCORRECTO

    emitir(reporte, args)
    return EXITO if reporte.ok else FALLO_VERIFICACION


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n⏹️  Programa interrumpido por el usuario")
        sys.exit(130)
