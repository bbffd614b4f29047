"""
Comando simulate: espectro colinear, estatísticas e manifesto.
"""
import argparse
import logging

from app.cli.deps import build_pipeline, resolve_config, resolve_out_dir
from app.services.rendering_service import rendering_service

logger = logging.getLogger(__name__)


def handle(args: argparse.Namespace) -> int:
    config = resolve_config(args.config, args.set)
    out_dir = resolve_out_dir(args.out, config)
    reference = rendering_service.read_spectrum_csv(args.reference) if args.reference else None

    result = build_pipeline(config, args.threads).simulate(out_dir, reference=reference)

    stats = result.signal_stats
    logger.info(
        f"Sinal: {len(stats.peaks)} picos, espaçamento médio {stats.mean_spacing_um}, "
        f"FWHM {stats.envelope.fwhm_um if stats.envelope else None}"
    )
    return 0


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "simulate",
        parents=parents,
        help="Espectro colinear (θ = 0) com estatísticas do pente",
    )
    parser.add_argument(
        "--reference",
        metavar="CSV",
        help="Espectro de referência (wavelength_um, intensity) para o SPCC",
    )
    parser.set_defaults(handler=handle)
