from pydantic import BaseModel, Field


class InstrumentResponse(BaseModel):
    """
    Resolução finita da detecção (núcleo gaussiano).

    Largura zero significa resposta identidade naquele eixo.
    """

    spectral_fwhm_um: float = Field(3e-4, ge=0)
    angular_fwhm_deg: float = Field(0.05, ge=0)

    model_config = {"frozen": True, "extra": "forbid"}
