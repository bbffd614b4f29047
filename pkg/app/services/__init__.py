"""
Services do Simulador.

Um service por etapa da cadeia de simulação, cada um com sua instância
singleton (coeficientes padrão). O CLI monta instâncias próprias quando o
RunConfig traz outro DispersionModel.
"""

from app.services.dispersion_service import DispersionService, dispersion_service
from app.services.superlattice_service import SuperlatticeService, superlattice_service
from app.services.interference_service import InterferenceService, interference_service
from app.services.instrument_service import InstrumentService, instrument_service
from app.services.analysis_service import AnalysisService, analysis_service
from app.services.rendering_service import RenderingService, rendering_service
from app.services.plotting_service import PlottingService, plotting_service

__all__ = [
    # Services
    "DispersionService",
    "SuperlatticeService",
    "InterferenceService",
    "InstrumentService",
    "AnalysisService",
    "RenderingService",
    "PlottingService",

    # Singletons
    "dispersion_service",
    "superlattice_service",
    "interference_service",
    "instrument_service",
    "analysis_service",
    "rendering_service",
    "plotting_service",
]
