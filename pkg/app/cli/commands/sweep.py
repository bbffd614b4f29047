"""
Comando sweep-temperature: um espectro por temperatura e resumo de deslocamentos.
"""
import argparse
import logging

from app.cli.deps import build_pipeline, resolve_config, resolve_out_dir

logger = logging.getLogger(__name__)


def handle(args: argparse.Namespace) -> int:
    config = resolve_config(args.config, args.set)
    out_dir = resolve_out_dir(args.out, config)
    summary = build_pipeline(config, args.threads).sweep_temperature(out_dir, args.temperatures)
    for step in summary.steps:
        logger.info(
            f"{step.from_c:g} → {step.to_c:g} °C: sinal {step.signal_shift_um}, "
            f"idler {step.idler_shift_um} μm"
        )
    return 0


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "sweep-temperature",
        parents=parents,
        help="Sintonia térmica do pente",
    )
    parser.add_argument(
        "--temperatures",
        nargs="+",
        type=float,
        default=[22.0, 100.0],
        metavar="T",
        help="Temperaturas em °C (padrão: 22 100)",
    )
    parser.set_defaults(handler=handle)
