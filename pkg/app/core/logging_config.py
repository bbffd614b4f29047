"""
Configuração de logging do processo.
"""
import logging

from app.core.config import settings


def configure_logging(quiet: bool = False, level: str = None) -> None:
    """
    Inicializa o logging raiz.

    `quiet` eleva o nível para WARNING; avisos do módulo `warnings`
    (ex.: OutOfRangeWarning) passam a sair pelo logger `py.warnings`.
    """
    resolved = "WARNING" if quiet else (level or settings.LOG_LEVEL)
    logging.basicConfig(level=resolved, format=settings.LOG_FORMAT, force=True)
    logging.captureWarnings(True)
