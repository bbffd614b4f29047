"""
Comandos do CLI: um módulo por subcomando, cada um com `add_parser`.
"""
from app.cli.commands import map2d, plot, simulate, sweep, validate

COMMANDS = [simulate, map2d, sweep, validate, plot]

__all__ = ["COMMANDS"]
