"""
SuperComb - ponto de entrada do CLI.

Uso:
    python -m app simulate --config designs/1.json --out out/design1
    python -m app map2d --config designs/1.json --threads 8
    python -m app sweep-temperature --config designs/2.json --temperatures 22 100
    python -m app validate designs/1.json
    python -m app plot out/design1/spectrum.csv

Códigos de saída: 0 sucesso, 1 erro de execução/configuração, 2 erro de parse.
Erros saem em stderr como JSON {"error", "message", "details"}.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from app import __version__
from app.cli.commands import COMMANDS
from app.core.errors import SimulationError
from app.core.logging_config import configure_logging

logger = logging.getLogger(__name__)


def _global_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="RunConfig em JSON")
    common.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="K=V",
        help="Override pontilhado, ex.: --set design.n_gap=0 (repetível)",
    )
    common.add_argument("--out", metavar="DIR", help="Diretório de saída")
    common.add_argument("--threads", type=int, default=None, metavar="N", help="Threads de avaliação")
    common.add_argument("--quiet", action="store_true", help="Apenas avisos e erros")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercomb",
        description="Simulador de pentes de SPDC em superredes biPPLN",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [_global_options()]
    for command in COMMANDS:
        command.add_parser(subparsers, parents)
    return parser


def _report(error: dict) -> None:
    sys.stderr.write(json.dumps(error, ensure_ascii=False, default=str) + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(quiet=args.quiet)

    if args.threads is not None and args.threads < 1:
        _report({"error": "PARSE_ERROR", "message": "--threads deve ser >= 1", "details": {}})
        return 2

    try:
        return args.handler(args)
    except SimulationError as e:
        logger.debug(f"Falha em {args.command}: {e}")
        _report(e.to_dict())
        return e.exit_code
    except OSError as e:
        _report({"error": "IO_ERROR", "message": str(e), "details": {}})
        return 1


if __name__ == "__main__":
    sys.exit(run())
