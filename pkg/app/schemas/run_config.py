"""
Schemas de Configuração de Execução.

RunConfig é o documento JSON que descreve uma execução completa; todo campo
tem default, de modo que `{}` é uma configuração válida (design 1, 22 °C).
"""
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from app.models.dispersion import DispersionModel
from app.models.instrument import InstrumentResponse
from app.models.superlattice import DesignSpec


def _grid_count(lo: float, hi: float, step: float) -> int:
    return int(round((hi - lo) / step)) + 1


def _check_step_divides(name: str, lo: float, hi: float, step: float) -> None:
    intervals = (hi - lo) / step
    if abs(intervals - round(intervals)) > 1e-6 * max(1.0, intervals):
        raise ValueError(
            f"{name}: passo {step} não divide o intervalo [{lo}, {hi}] ({intervals:.6g} passos)"
        )


class SignalGrid(BaseModel):
    """Grade uniforme de λ de sinal (μm)."""
    min_um: float = 0.60
    max_um: float = 0.70
    step_um: float = Field(2e-5, gt=0)

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def check_bounds(self):
        if not self.max_um > self.min_um:
            raise ValueError("signal_grid.max_um deve ser maior que min_um")
        _check_step_divides("signal_grid", self.min_um, self.max_um, self.step_um)
        return self

    def points(self) -> np.ndarray:
        return np.linspace(self.min_um, self.max_um, _grid_count(self.min_um, self.max_um, self.step_um))


class AngleGrid(BaseModel):
    """Grade uniforme de ângulo externo (graus)."""
    min_deg: float = -2.2
    max_deg: float = 2.2
    step_deg: float = Field(0.01, gt=0)

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def check_bounds(self):
        if not self.max_deg >= self.min_deg:
            raise ValueError("angle_grid.max_deg deve ser >= min_deg")
        if self.max_deg > self.min_deg:
            _check_step_divides("angle_grid", self.min_deg, self.max_deg, self.step_deg)
        return self

    def points(self) -> np.ndarray:
        """Grade simétrica é forçada exatamente antissimétrica (θ = 0 exato no centro)."""
        n = _grid_count(self.min_deg, self.max_deg, self.step_deg)
        pts = np.linspace(self.min_deg, self.max_deg, n)
        if self.min_deg == -self.max_deg:
            pts = 0.5 * (pts - pts[::-1])
        return pts


class AnalysisThresholds(BaseModel):
    """Limiares de inclusão de picos, em frações do máximo."""
    min_height: float = Field(0.1, ge=0, le=1)
    min_prominence: float = Field(0.05, ge=0, le=1)
    apply_jacobian: bool = Field(False, description="Aplica (λ_s/λ_i)² no canal idler")

    model_config = {"extra": "forbid"}


def _default_design() -> DesignSpec:
    return DesignSpec(name="design-1", n_nl=16, n_gap=85, m_gap=8)


class RunConfig(BaseModel):
    """Configuração completa de uma execução."""
    design: DesignSpec = Field(default_factory=_default_design)
    pump_wavelength_um: float = Field(0.532, gt=0, description="Bombeio CW (μm)")
    temperature_c: float = Field(22.0, description="Temperatura do cristal (°C)")
    signal_grid: SignalGrid = Field(default_factory=SignalGrid)
    angle_grid: AngleGrid = Field(default_factory=AngleGrid)
    instrument: InstrumentResponse = Field(default_factory=InstrumentResponse)
    analysis: AnalysisThresholds = Field(default_factory=AnalysisThresholds)
    cross_section_wavelength_um: float = Field(
        0.645,
        description="λ do corte angular exportado por map2d"
    )
    dispersion: DispersionModel = Field(default_factory=DispersionModel)
    method: Literal["fast", "naive"] = "fast"
    output_dir: Optional[str] = None

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def check_grids(self):
        lp = self.pump_wavelength_um
        if self.signal_grid.min_um <= lp or self.signal_grid.max_um >= 2.0 * lp:
            raise ValueError(
                f"signal_grid deve estar dentro de ({lp}, {2.0 * lp}) μm"
            )
        # Abaixo do polo n² decresce com λ: basta o maior idler da grade
        idler_max = 1.0 / (1.0 / lp - 1.0 / self.signal_grid.min_um)
        n2 = self.dispersion.index_squared(idler_max, self.temperature_c)
        if idler_max >= self.dispersion.a5 or not (np.isfinite(n2) and n2 > 1.0):
            raise ValueError(
                f"signal_grid.min_um = {self.signal_grid.min_um} leva o idler a {idler_max:.4g} μm, "
                f"onde o modelo de Sellmeier não define índice (polo em {self.dispersion.a5} μm)"
            )
        if max(abs(self.angle_grid.min_deg), abs(self.angle_grid.max_deg)) > 2.5:
            raise ValueError("angle_grid deve estar em [-2.5, 2.5] graus")
        if not (self.signal_grid.min_um <= self.cross_section_wavelength_um <= self.signal_grid.max_um):
            raise ValueError("cross_section_wavelength_um fora de signal_grid")
        return self


class RunManifest(BaseModel):
    """Tudo o que a execução resolveu; reexecutar a partir dele reproduz os artefatos."""
    app_version: str
    command: str
    config: dict
    process: dict = Field(
        default_factory=dict,
        description="Settings do processo que afetam a saída (blocos, formato de CSV)"
    )
    artifacts: List[str] = Field(default_factory=list)
    extra: dict = Field(default_factory=dict)


class ShiftStep(BaseModel):
    """Deslocamento do centro do envelope entre duas temperaturas consecutivas."""
    from_c: float
    to_c: float
    signal_shift_um: Optional[float] = None
    idler_shift_um: Optional[float] = None


class ShiftSummary(BaseModel):
    temperatures_c: List[float]
    signal_centers_um: List[Optional[float]]
    idler_centers_um: List[Optional[float]]
    steps: List[ShiftStep]
    monotone_signal: Optional[bool] = None
