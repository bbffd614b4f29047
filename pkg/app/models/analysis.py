"""
Estatísticas do pente espectral: picos, envelope gaussiano, espaçamento, SPCC.
"""
import math
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))


class Peak(BaseModel):
    """Máximo de uma franja espectral."""

    wavelength_um: float
    height: float = Field(..., gt=0)
    prominence: float = Field(..., ge=0)

    @model_validator(mode="after")
    def check_prominence(self):
        if self.prominence > self.height * (1 + 1e-12):
            raise ValueError("prominence não pode exceder height")
        return self


class EnvelopeFit(BaseModel):
    """A·exp(−(λ−μ)²/(2σ²)) ajustado aos máximos das franjas."""

    amplitude: float
    center_um: float
    sigma_um: float = Field(..., gt=0)
    residual_rms: float

    @property
    def fwhm_um(self) -> float:
        return FWHM_PER_SIGMA * self.sigma_um

    def to_export(self) -> dict:
        data = self.model_dump()
        data["fwhm_um"] = self.fwhm_um
        return data


class CombStats(BaseModel):
    """
    Estatísticas de um canal.

    Campos opcionais ficam ausentes quando não há picos suficientes.
    """

    channel: str = "signal"
    peaks: List[Peak] = []
    mean_spacing_um: Optional[float] = None
    median_spacing_um: Optional[float] = None
    comb_span_um: Optional[float] = None
    envelope: Optional[EnvelopeFit] = None
    spcc: Optional[float] = None
    peak_intensity: Optional[float] = None

    def to_export(self) -> dict:
        """JSON de exportação; campos None são omitidos."""
        data = {
            "channel": self.channel,
            "peaks": [p.model_dump() for p in self.peaks],
            "mean_spacing_um": self.mean_spacing_um,
            "median_spacing_um": self.median_spacing_um,
            "comb_span_um": self.comb_span_um,
            "envelope": self.envelope.to_export() if self.envelope else None,
            "spcc": self.spcc,
            "peak_intensity": self.peak_intensity,
        }
        return {k: v for k, v in data.items() if v is not None}
