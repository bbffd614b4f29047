"""
Comando validate: relatório do design e previsões analíticas.

Imprime o relatório em JSON na saída padrão; código 1 se o design for inválido.
"""
import argparse
import sys

from app.cli.deps import build_pipeline, resolve_design_config
from app.services.rendering_service import rendering_service


def handle(args: argparse.Namespace) -> int:
    config = resolve_design_config(args.design or args.config, args.set)
    pipeline = build_pipeline(config, args.threads)
    summary = pipeline.validate_design()
    sys.stdout.write(rendering_service.to_json(summary.to_export()))
    if summary.report.valid and args.export_sequence:
        pipeline.export_sequence(args.export_sequence)
    return 0 if summary.report.valid else 1


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "validate",
        parents=parents,
        help="Valida um design e mostra as grandezas derivadas",
    )
    parser.add_argument(
        "design",
        nargs="?",
        help="JSON do design (RunConfig ou DesignSpec); padrão: --config",
    )
    parser.add_argument(
        "--export-sequence",
        metavar="CSV",
        help="Grava a sequência de domínios (um elemento por linha)",
    )
    parser.set_defaults(handler=handle)
