"""
Schemas do Simulador.

Schemas Pydantic para configuração e artefatos de saída.
"""

from app.schemas.design import DesignSummary, ValidationReport
from app.schemas.run_config import (
    AnalysisThresholds,
    AngleGrid,
    RunConfig,
    RunManifest,
    ShiftStep,
    ShiftSummary,
    SignalGrid,
)

__all__ = [
    # Design
    "DesignSummary",
    "ValidationReport",

    # Execução
    "AnalysisThresholds",
    "AngleGrid",
    "RunConfig",
    "RunManifest",
    "ShiftStep",
    "ShiftSummary",
    "SignalGrid",
]
