"""
Schemas de Design.
"""
from typing import List, Optional

from pydantic import BaseModel, Field


class ValidationReport(BaseModel):
    """Resultado de superlattice_service.validate."""
    valid: bool
    violations: List[str] = Field(default_factory=list)
    design_length_um: Optional[float] = Field(
        None,
        description="Comprimento do design (μm); ausente se os parâmetros forem inválidos"
    )


class DesignSummary(BaseModel):
    """Relatório do comando validate: validação + grandezas derivadas."""
    name: Optional[str] = None
    report: ValidationReport
    l_stack_um: float
    l_gap_um: float
    l_design_um: Optional[float] = None
    element_count: int
    domain_count: int
    gap_count: int
    qpm_signal_wavelength_um: Optional[float] = Field(
        None,
        description="λ de sinal onde |Δk|·l_domain = π"
    )
    predicted_spacing_um: Optional[float] = Field(
        None,
        description="Espaçamento analítico do pente; ausente sem gaps"
    )
    predicted_envelope_fwhm_um: Optional[float] = None

    def to_export(self) -> dict:
        return self.model_dump(exclude_none=True)
