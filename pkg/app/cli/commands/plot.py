"""
Comando plot: figuras a partir dos CSVs dos outros comandos.

Espectros (e cortes angulares) são sobrepostos numa única figura; cada mapa
vira um mapa de calor separado.
"""
import argparse
import logging
from pathlib import Path
from typing import List

import pandas as pd

from app.core.config import settings
from app.core.errors import InvalidInputError
from app.services.plotting_service import plotting_service
from app.services.rendering_service import MAP_CORNER_LABEL, rendering_service

logger = logging.getLogger(__name__)


def _is_map(path: Path) -> bool:
    try:
        columns = list(pd.read_csv(path, nrows=0).columns)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise InvalidInputError(f"CSV inválido: {path}", details={"reason": str(e)})
    if len(columns) < 2 or columns[0] != MAP_CORNER_LABEL:
        return False
    try:
        [float(c) for c in columns[1:]]
    except ValueError:
        return False
    return True


def handle(args: argparse.Namespace) -> int:
    inputs = [Path(p) for p in args.inputs]
    for path in inputs:
        if not path.is_file():
            raise InvalidInputError(f"Arquivo não encontrado: {path}")
    out_dir = Path(args.out or settings.OUTPUT_DIR)
    fmt = args.format.lower()

    maps = [p for p in inputs if _is_map(p)]
    curves = [p for p in inputs if p not in maps]
    written: List[Path] = []

    for path in maps:
        target = out_dir / f"{path.stem}.{fmt}"
        written.append(plotting_service.plot_map(target, rendering_service.read_map_csv(path), title=args.title))

    if curves:
        spectra = [rendering_service.read_spectrum_csv(p, column=args.column) for p in curves]
        reference = rendering_service.read_spectrum_csv(args.reference) if args.reference else None
        angular = pd.read_csv(curves[0], nrows=0).columns[0] == "theta_deg"
        target = Path(args.output) if args.output else out_dir / f"{curves[0].stem}.{fmt}"
        written.append(plotting_service.plot_spectra(
            target,
            spectra,
            labels=[p.stem for p in curves],
            reference=reference,
            title=args.title,
            xlabel="Ângulo externo (graus)" if angular else "Comprimento de onda (μm)",
        ))

    logger.info(f"{len(written)} figura(s) gerada(s)")
    return 0


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "plot",
        parents=parents,
        help="Gera imagens a partir de CSVs de espectro, corte ou mapa",
    )
    parser.add_argument("inputs", nargs="+", help="CSVs gerados por simulate/map2d/sweep-temperature")
    parser.add_argument("--reference", metavar="CSV", help="Espectro sobreposto (tracejado)")
    parser.add_argument("--column", help="Coluna de intensidade (padrão: intensity_convolved)")
    parser.add_argument("--output", metavar="PATH", help="Arquivo da figura de espectros")
    parser.add_argument("--title")
    parser.add_argument("--format", default="png", help="png, pdf ou svg")
    parser.set_defaults(handler=handle)
