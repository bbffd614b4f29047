"""
Espectros e mapas λ–θ produzidos pela interferência não linear.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict

import numpy as np


class Channel(str, Enum):
    SIGNAL = "signal"
    IDLER = "idler"


@dataclass(frozen=True)
class PhaseMismatchField:
    """
    Densidade de descasamento longitudinal δ = −k_p,z + k_s,z + k_i,z (rad/μm).

    evanescent marca os pontos onde o momento transversal do idler não fecha
    (q > k_i); nesses pontos a intensidade é zero.
    """

    delta_k: np.ndarray
    evanescent: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    """I(λ) numa grade monotônica; intensidades não negativas."""

    axis: np.ndarray
    intensity: np.ndarray
    channel: Channel = Channel.SIGNAL
    theta_ext_deg: float = 0.0
    temperature_c: float = 22.0
    convolved: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.axis.shape != self.intensity.shape:
            raise ValueError("axis e intensity devem ter o mesmo tamanho")

    @property
    def step(self) -> float:
        return float(self.axis[1] - self.axis[0])

    def with_intensity(self, intensity: np.ndarray, **changes) -> "Spectrum":
        return replace(self, intensity=intensity, **changes)


@dataclass(frozen=True)
class AngularMap:
    """I(λ, θ) com intensity[i, j] ↔ (lambda_axis[i], theta_axis[j])."""

    lambda_axis: np.ndarray
    theta_axis: np.ndarray
    intensity: np.ndarray
    channel: Channel = Channel.SIGNAL
    temperature_c: float = 22.0
    convolved: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def column(self, theta_deg: float) -> Spectrum:
        """Corte espectral no ângulo de grade mais próximo de theta_deg."""
        j = int(np.argmin(np.abs(self.theta_axis - theta_deg)))
        return Spectrum(
            axis=self.lambda_axis,
            intensity=self.intensity[:, j],
            channel=self.channel,
            theta_ext_deg=float(self.theta_axis[j]),
            temperature_c=self.temperature_c,
            convolved=self.convolved,
        )

    def row(self, lambda_um: float) -> np.ndarray:
        """Corte angular no comprimento de onda de grade mais próximo."""
        i = int(np.argmin(np.abs(self.lambda_axis - lambda_um)))
        return self.intensity[i, :]

    def with_intensity(self, intensity: np.ndarray, **changes) -> "AngularMap":
        return replace(self, intensity=intensity, **changes)
