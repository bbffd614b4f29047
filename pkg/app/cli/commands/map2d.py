"""
Comando map2d: mapa λ–θ, versão convoluída e corte angular.
"""
import argparse

from app.cli.deps import build_pipeline, resolve_config, resolve_out_dir


def handle(args: argparse.Namespace) -> int:
    config = resolve_config(args.config, args.set)
    out_dir = resolve_out_dir(args.out, config)
    build_pipeline(config, args.threads).map2d(out_dir)
    return 0


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "map2d",
        parents=parents,
        help="Espectro comprimento de onda × ângulo de espalhamento",
    )
    parser.set_defaults(handler=handle)
