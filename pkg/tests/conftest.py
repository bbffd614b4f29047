"""
Fixtures para os testes.

Configuração do ambiente de teste:
- Services com coeficientes padrão
- Designs de referência (1, 2, 3) e o baseline sem gaps
- Espectros simulados, calculados uma vez por sessão
- Geração aleatória com semente fixa
"""
import math
from pathlib import Path

import numpy as np
import pytest

from app.models.spectrum import Channel, Spectrum
from app.models.superlattice import DesignSpec
from app.services.analysis_service import AnalysisService
from app.services.dispersion_service import DispersionService
from app.services.instrument_service import InstrumentService
from app.services.interference_service import InterferenceService
from app.services.superlattice_service import SuperlatticeService

REPO_ROOT = Path(__file__).resolve().parent.parent
DESIGNS_DIR = REPO_ROOT / "designs"


# ==================== SERVICES ====================

@pytest.fixture(scope="session")
def dispersion() -> DispersionService:
    return DispersionService()


@pytest.fixture(scope="session")
def superlattice(dispersion) -> SuperlatticeService:
    return SuperlatticeService(dispersion=dispersion)


@pytest.fixture(scope="session")
def interference(dispersion, superlattice) -> InterferenceService:
    return InterferenceService(dispersion=dispersion, superlattice=superlattice)


@pytest.fixture(scope="session")
def instrument() -> InstrumentService:
    return InstrumentService()


@pytest.fixture(scope="session")
def analysis() -> AnalysisService:
    return AnalysisService()


# ==================== DESIGNS ====================

@pytest.fixture(scope="session")
def design1() -> DesignSpec:
    return DesignSpec(name="design-1", n_nl=16, n_gap=85, m_gap=8)


@pytest.fixture(scope="session")
def design2() -> DesignSpec:
    return DesignSpec(name="design-2", n_nl=64, n_gap=21, m_gap=8)


@pytest.fixture(scope="session")
def design3() -> DesignSpec:
    return DesignSpec(name="design-3", n_nl=16, n_gap=23, m_gap=32)


@pytest.fixture(scope="session")
def baseline() -> DesignSpec:
    return DesignSpec(name="baseline", n_nl=16, n_gap=0)


@pytest.fixture(scope="session")
def small_design() -> DesignSpec:
    """Design curto: quadratura e soma direta continuam baratas."""
    return DesignSpec(n_nl=4, n_gap=2, m_gap=1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240521)


# ==================== ESPECTROS ====================

@pytest.fixture(scope="session")
def signal_grid() -> np.ndarray:
    return np.linspace(0.60, 0.70, 5001)


@pytest.fixture(scope="session")
def design1_spectrum(interference, design1, signal_grid) -> Spectrum:
    return interference.spectrum(design1, signal_grid, temperature_c=22.0)


@pytest.fixture(scope="session")
def baseline_spectrum(interference, baseline, signal_grid) -> Spectrum:
    return interference.spectrum(baseline, signal_grid, temperature_c=22.0)


def gaussian_spectrum(center=0.647, sigma=0.0129, n=2001, width=0.1) -> Spectrum:
    axis = np.linspace(center - width / 2, center + width / 2, n)
    return Spectrum(
        axis=axis,
        intensity=np.exp(-0.5 * ((axis - center) / sigma) ** 2),
        channel=Channel.SIGNAL,
    )


def cos2_comb(periods: int = 10, period: int = 50) -> Spectrum:
    """sin²(π·i/period): máximos exatos em i = period/2 + k·period."""
    i = np.arange(periods * period, dtype=float)
    return Spectrum(axis=i, intensity=np.sin(math.pi * i / period) ** 2)
