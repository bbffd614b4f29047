"""
Modelo de dispersão: Sellmeier dependente de temperatura.

n²(λ, T) = a1 + b1·f + (a2 + b2·f)/(λ² − (a3 + b3·f)²) + (a4 + b4·f)/(λ² − a5²) − a6·λ²
f = (T − 24.5)(T + 570.82)

λ em μm, T em °C. Coeficientes padrão: raio extraordinário do LiNbO₃
congruente dopado com 5% MgO (Gayer et al., Appl. Phys. B 91, 343, 2008).
"""
from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

T_REFERENCE_C = 24.5
T_OFFSET_C = 570.82


class DispersionModel(BaseModel):
    """Coeficientes de Sellmeier (série a) e correções térmicas (série b)."""

    a1: float = 5.756
    a2: float = 0.0983
    a3: float = 0.2020
    a4: float = 189.32
    a5: float = 12.52
    a6: float = 1.32e-2
    b1: float = 2.860e-6
    b2: float = 4.700e-8
    b3: float = 6.113e-8
    b4: float = 1.516e-4
    valid_min_um: float = Field(0.5, gt=0)
    valid_max_um: float = 4.0
    reference: str = "Gayer et al. 2008, 5% MgO:CLN, extraordinary ray"

    model_config = {"frozen": True, "extra": "forbid"}

    @model_validator(mode="after")
    def check_range(self):
        if self.valid_max_um <= self.valid_min_um:
            raise ValueError("valid_max_um deve ser maior que valid_min_um")
        # n > 1 em toda a faixa para T em [15, 200] °C
        lam = np.linspace(self.valid_min_um, self.valid_max_um, 64)
        for temperature in (15.0, 200.0):
            n2 = self.index_squared(lam, temperature)
            if not np.all(np.isfinite(n2)) or np.any(n2 <= 1.0):
                raise ValueError(
                    f"Índice não real ou <= 1 dentro da faixa de validade a {temperature} °C"
                )
        return self

    @property
    def valid_range(self) -> Tuple[float, float]:
        return (self.valid_min_um, self.valid_max_um)

    @staticmethod
    def temperature_term(temperature_c):
        """f(T); exatamente zero em T = 24.5 °C."""
        return (temperature_c - T_REFERENCE_C) * (temperature_c + T_OFFSET_C)

    def index_squared(self, lam, temperature_c):
        """n²(λ, T), vetorizado em λ."""
        f = self.temperature_term(temperature_c)
        lam2 = np.square(lam)
        return (
            self.a1 + self.b1 * f
            + (self.a2 + self.b2 * f) / (lam2 - (self.a3 + self.b3 * f) ** 2)
            + (self.a4 + self.b4 * f) / (lam2 - self.a5 ** 2)
            - self.a6 * lam2
        )

    def index_squared_derivative(self, lam, temperature_c):
        """d(n²)/dλ analítico."""
        f = self.temperature_term(temperature_c)
        lam2 = np.square(lam)
        uv = (self.a2 + self.b2 * f) / (lam2 - (self.a3 + self.b3 * f) ** 2) ** 2
        ir = (self.a4 + self.b4 * f) / (lam2 - self.a5 ** 2) ** 2
        return -2.0 * lam * (uv + ir) - 2.0 * self.a6 * lam


class PhotonTriplet(BaseModel):
    """Comprimentos de onda de vácuo (μm) de bomba, sinal e idler a uma temperatura."""

    lambda_p: float = Field(..., gt=0)
    lambda_s: float = Field(..., gt=0)
    lambda_i: float = Field(..., gt=0)
    temperature_c: float

    model_config = {"frozen": True, "extra": "forbid"}

    @model_validator(mode="after")
    def check_energy_conservation(self):
        if not (self.lambda_p < self.lambda_s <= 2.0 * self.lambda_p * (1 + 1e-12)):
            raise ValueError("Exige λ_p < λ_s ≤ 2·λ_p (sinal é o fóton mais curto)")
        lhs = 1.0 / self.lambda_p
        rhs = 1.0 / self.lambda_s + 1.0 / self.lambda_i
        if abs(lhs - rhs) > 1e-12 * lhs:
            raise ValueError("Conservação de energia violada: 1/λ_p ≠ 1/λ_s + 1/λ_i")
        return self
