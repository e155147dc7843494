#!/usr/bin/env python3
"""
LoopW - compilador verificador para Loop^ω
Punto de entrada principal de la aplicación.

Uso:
    python -m loopw check corpus/double.loopw
    python -m loopw vcs corpus/consequence.loopw --export obligaciones.csv
    python -m loopw run corpus/double.loopw 3
    python -m loopw translate corpus/early_exit.loopw
    python -m loopw compare corpus/double.loopw --max 5

Códigos de salida: 0 correcto, 1 errores de tipo u obligaciones,
2 uso o sintaxis, 3 errores de ejecución.
"""

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

# Añadir el directorio padre al path
sys.path.insert(0, str(Path(__file__).parent.parent))

from loopw import __version__
from loopw.config.settings import Config, CORPUS_DIR
from loopw.errors import LoopwError, ConfigError, EscapedLabel, FuelExceeded, StuckTerm, UntranslatableEquation
from loopw.syntax.ast import Program
from loopw.syntax.parser import parse_program
from loopw.syntax.wellformed import well_formed
from loopw.checker.diagnostics import Diagnostic, format_report, has_errors
from loopw.checker.typechecker import CheckReport, TypeChecker
from loopw.hoare.smt_export import SmtExporter
from loopw.analytics.reporter import Reporter
from loopw.analytics.differential import compare_semantics
from loopw.runtime.interpreter import Interpreter
from loopw.runtime.values import render
from loopw.translator.translate import translate
from loopw.utils.helpers import setup_logging, read_source, render_values, format_inputs, banner

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

logger = logging.getLogger('LoopW.CLI')


class _Stop(Exception):
    """Corta un comando con un código de salida."""

    def __init__(self, code: int):
        super().__init__(code)
        self.code = code


# ==================== PIPELINE ====================

def _config_from_args(args) -> Config:
    custom = {
        'strict': args.strict,
        'discharge': not args.no_discharge,
        'log_level': args.log_level,
    }
    for key in ('bound', 'step_cap', 'fuel'):
        value = getattr(args, key)
        if value is not None:
            custom[key] = value
    if getattr(args, 'max', None) is not None:
        custom['compare_max'] = args.max
    return Config.from_env(custom)


def load_program(path: str, config: Config) -> Program:
    """Lee, parsea y comprueba la buena formación; corta con código 2 si falla."""
    # examples/NOMBRE.loopw se busca también en el corpus
    candidate = Path(path)
    if not candidate.exists() and (CORPUS_DIR / candidate.name).exists():
        path = str(CORPUS_DIR / candidate.name)
    try:
        text = read_source(path)
    except OSError as e:
        print(f"❌ No se puede leer {path}: {e}", file=sys.stderr)
        raise _Stop(EXIT_USAGE)
    try:
        program = parse_program(text)
    except LoopwError as e:
        print(Diagnostic.from_error(e).to_line())
        raise _Stop(EXIT_USAGE)
    entry = config.get('entry_name')
    if entry and entry != program.entry:
        program = dataclasses.replace(program, entry=entry)
    diagnostics = well_formed(program)
    for line in format_report(diagnostics):
        print(line)
    if has_errors(diagnostics):
        raise _Stop(EXIT_USAGE)
    return program


def check(program: Program, config: Config) -> Tuple[TypeChecker, CheckReport]:
    checker = TypeChecker(program, config=config)
    report = checker.check_program()
    logger.info(f"Comprobación: {len(report.errors)} errores, {len(report.obligations)} obligaciones")
    return checker, report


def _emit_smt(program: Program, report: CheckReport, args, config: Config) -> None:
    if not args.emit_smt:
        return
    exporter = SmtExporter(program, logic=config.get('smt_logic'))
    written = exporter.export(report.obligations, args.emit_smt)
    print(f"💾 {len(written)} ficheros SMT-LIB2 en {args.emit_smt}", file=sys.stderr)


def _require_typed(report: CheckReport, config: Config) -> None:
    if not report.ok(config.get('strict')):
        lines = [d.to_line() for d in report.errors + report.obligation_diagnostics()]
        for line in sorted(set(lines)):
            print(line, file=sys.stderr)
        raise _Stop(EXIT_CHECK)


# ==================== COMANDOS ====================

def cmd_check(args, config: Config) -> int:
    """Comprueba tipos y descarga las obligaciones."""
    program = load_program(args.file, config)
    _, report = check(program, config)
    diagnostics: List[Diagnostic] = report.diagnostics + report.obligation_diagnostics()
    for line in format_report(diagnostics):
        print(line)
    _emit_smt(program, report, args, config)
    if report.ok(config.get('strict')):
        print(f"✅ {args.file}: correcto ({len(report.obligations)} obligaciones)")
        return EXIT_OK
    print(f"❌ {args.file}: {len(report.errors)} errores, {len(report.refuted)} refutadas, "
          f"{len(report.unproven)} sin probar")
    return EXIT_CHECK


def cmd_vcs(args, config: Config) -> int:
    """Imprime la tabla de obligaciones."""
    program = load_program(args.file, config)
    _, report = check(program, config)
    for line in format_report(report.diagnostics):
        print(line)
    for obligation in report.obligations:
        print(obligation.to_line())
    _emit_smt(program, report, args, config)
    if args.export:
        try:
            Reporter(report.obligations, report.diagnostics, args.file).export(args.export)
        except ValueError as e:
            print(f"❌ {e}", file=sys.stderr)
            return EXIT_USAGE
        print(f"💾 Exportado: {args.export}", file=sys.stderr)
    return EXIT_OK if report.ok(config.get('strict')) else EXIT_CHECK


def cmd_run(args, config: Config) -> int:
    """Ejecuta el procedimiento de entrada con el intérprete directo."""
    program = load_program(args.file, config)
    _, report = check(program, config)
    _require_typed(report, config)
    try:
        outputs = Interpreter(program, fuel=config.get('fuel')).run(args.inputs)
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EscapedLabel, FuelExceeded) as e:
        print(Diagnostic.from_error(e, program.entry_proc().name).to_line(), file=sys.stderr)
        return EXIT_RUNTIME
    for line in render_values([render(v) for v in outputs]):
        print(line)
    return EXIT_OK


def cmd_translate(args, config: Config) -> int:
    """Imprime el término del núcleo funcional."""
    program = load_program(args.file, config)
    _, report = check(program, config)
    if report.errors:
        _require_typed(report, config)
    try:
        core = translate(program)
    except UntranslatableEquation as e:
        print(Diagnostic.from_error(e, e.fsym).to_line(), file=sys.stderr)
        return EXIT_CHECK
    print(core.show())
    return EXIT_OK


def cmd_compare(args, config: Config) -> int:
    """Compara intérprete y núcleo sobre las entradas 0..N."""
    program = load_program(args.file, config)
    _, report = check(program, config)
    if report.errors:
        _require_typed(report, config)
    max_input = config.get('compare_max')
    print(banner(f"COMPARACIÓN {args.file} (entradas 0..{max_input})"), file=sys.stderr)
    try:
        divergence = compare_semantics(program, max_input, fuel=config.get('fuel'),
                                       progress=args.progress)
    except UntranslatableEquation as e:
        print(Diagnostic.from_error(e, e.fsym).to_line(), file=sys.stderr)
        return EXIT_CHECK
    except StuckTerm as e:
        print(f"❌ término bloqueado: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    if divergence is None:
        print("equal")
        return EXIT_OK
    print(f"diverge {format_inputs(divergence.inputs)}: "
          f"run={list(divergence.interpreter)} core={list(divergence.core)}")
    return EXIT_RUNTIME


COMMANDS = {
    'check': cmd_check,
    'vcs': cmd_vcs,
    'run': cmd_run,
    'translate': cmd_translate,
    'compare': cmd_compare,
}


# ==================== ARGUMENTOS ====================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--strict', action='store_true', help='UNPROVEN cuenta como error')
    common.add_argument('--bound', type=int, help='Cota B de la búsqueda de contraejemplos')
    common.add_argument('--step-cap', dest='step_cap', type=int, help='Pasos máximos de reescritura')
    common.add_argument('--fuel', type=int, help='Combustible de evaluación')
    common.add_argument('--emit-smt', dest='emit_smt', metavar='DIR',
                        help='Escribir las obligaciones en SMT-LIB2')
    common.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    common.add_argument('--no-discharge', dest='no_discharge', action='store_true',
                        help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog='loopw',
        description='LoopW - compilador verificador para Loop^ω',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument('--version', action='version', version=f'loopw {__version__}')
    subparsers = parser.add_subparsers(dest='command', help='Comandos disponibles')

    check_parser = subparsers.add_parser('check', parents=[common], help='Comprobar tipos y obligaciones')
    check_parser.add_argument('file', help='Programa .loopw')

    vcs_parser = subparsers.add_parser('vcs', parents=[common], help='Tabla de obligaciones')
    vcs_parser.add_argument('file', help='Programa .loopw')
    vcs_parser.add_argument('--export', help='Exportar a archivo (CSV o JSON)')

    run_parser = subparsers.add_parser('run', parents=[common], help='Ejecutar el procedimiento de entrada')
    run_parser.add_argument('file', help='Programa .loopw')
    run_parser.add_argument('inputs', type=int, nargs='*', help='Entradas (naturales)')

    translate_parser = subparsers.add_parser('translate', parents=[common], help='Imprimir el término del núcleo')
    translate_parser.add_argument('file', help='Programa .loopw')

    compare_parser = subparsers.add_parser('compare', parents=[common], help='Comparar intérprete y núcleo')
    compare_parser.add_argument('file', help='Programa .loopw')
    compare_parser.add_argument('--max', type=int, help='Cota de cada entrada (por defecto 5)')
    compare_parser.add_argument('--progress', action='store_true', help='Mostrar barra de progreso')

    return parser


def _parse(parser: argparse.ArgumentParser, argv: Optional[List[str]]) -> argparse.Namespace:
    """
    Parsea la línea de comandos admitiendo opciones entre las entradas de `run`.

    argparse deja sin consumir los enteros que siguen a una opción
    (`run FILE --strict 3`); se añaden a `inputs` en su orden.
    """
    args, extra = parser.parse_known_args(argv)
    if extra and args.command == 'run' and all(_is_int(x) for x in extra):
        args.inputs = list(args.inputs) + [int(x) for x in extra]
    elif extra:
        parser.error(f"argumentos no reconocidos: {' '.join(extra)}")
    return args


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def main(argv: Optional[List[str]] = None) -> int:
    """Punto de entrada principal."""
    parser = build_parser()
    try:
        args = _parse(parser, argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    if getattr(args, 'inputs', None) and any(n < 0 for n in args.inputs):
        print("❌ las entradas deben ser naturales", file=sys.stderr)
        return EXIT_USAGE

    try:
        config = _config_from_args(args)
    except ConfigError as e:
        print(f"❌ Configuración inválida: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(
        log_level=config.get('log_level'),
        log_file=config.get('log_file'),
        log_to_console=config.get('log_to_console')
    )

    try:
        return COMMANDS[args.command](args, config)
    except _Stop as stop:
        return stop.code
    except RecursionError:
        print(f"❌ {args.file}: anidamiento demasiado profundo", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\n⚠️  Interrumpido por el usuario", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
