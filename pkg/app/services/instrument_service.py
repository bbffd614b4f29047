"""
Service de Resposta Instrumental.

Convolução gaussiana ao longo de λ e θ e normalização pelo máximo.
"""
import logging
import math

import numpy as np
from scipy.ndimage import convolve1d

from app.core.errors import InvalidInputError
from app.models.analysis import FWHM_PER_SIGMA
from app.models.instrument import InstrumentResponse
from app.models.spectrum import AngularMap, Spectrum

logger = logging.getLogger(__name__)

KERNEL_HALF_WIDTH_SIGMAS = 4.0
UNIFORM_STEP_RTOL = 1e-6


def _uniform_step(axis: np.ndarray, name: str) -> float:
    """Passo da grade; InvalidInputError se não uniforme."""
    if axis.size < 2:
        raise InvalidInputError(f"Eixo {name} precisa de ao menos 2 pontos")
    steps = np.diff(axis)
    step = float(steps.mean())
    if step <= 0 or np.max(np.abs(steps - step)) > UNIFORM_STEP_RTOL * abs(step):
        raise InvalidInputError(f"Grade {name} não uniforme", details={"axis": name})
    return step


def gaussian_kernel(fwhm: float, step: float) -> np.ndarray:
    """Kernel gaussiano truncado em ±4σ, soma unitária."""
    sigma = fwhm / FWHM_PER_SIGMA / step
    half = max(1, int(math.ceil(KERNEL_HALF_WIDTH_SIGMAS * sigma)))
    x = np.arange(-half, half + 1, dtype=float)
    kernel = np.exp(-0.5 * np.square(x / sigma))
    return kernel / kernel.sum()


def _convolve_axis(values: np.ndarray, fwhm: float, step: float, axis: int) -> np.ndarray:
    """Convolução com renormalização pela sobreposição válida nas bordas."""
    if fwhm == 0:
        return values.copy()
    kernel = gaussian_kernel(fwhm, step)
    weighted = convolve1d(values, kernel, axis=axis, mode="constant", cval=0.0)
    overlap = convolve1d(np.ones(values.shape[axis]), kernel, mode="constant", cval=0.0)
    shape = [1] * values.ndim
    shape[axis] = -1
    return weighted / overlap.reshape(shape)


class InstrumentService:
    """Service para a resolução finita do espectrógrafo."""

    def convolve_spectrum(self, s: Spectrum, response: InstrumentResponse) -> Spectrum:
        step = _uniform_step(s.axis, "λ")
        if response.spectral_fwhm_um < 0:
            raise InvalidInputError("spectral_fwhm_um deve ser >= 0")
        out = _convolve_axis(
            np.asarray(s.intensity, dtype=float), response.spectral_fwhm_um, step, axis=0
        )
        return s.with_intensity(out, convolved=True)

    def convolve_map(self, m: AngularMap, response: InstrumentResponse) -> AngularMap:
        """Separável: eixo λ, depois eixo θ."""
        lam_step = _uniform_step(m.lambda_axis, "λ")
        theta_step = _uniform_step(m.theta_axis, "θ") if m.theta_axis.size > 1 else 1.0
        out = _convolve_axis(
            np.asarray(m.intensity, dtype=float), response.spectral_fwhm_um, lam_step, axis=0
        )
        if m.theta_axis.size > 1:
            out = _convolve_axis(out, response.angular_fwhm_deg, theta_step, axis=1)
        logger.debug(
            f"Mapa convoluído: fwhm λ={response.spectral_fwhm_um} μm, "
            f"θ={response.angular_fwhm_deg}°"
        )
        return m.with_intensity(out, convolved=True)

    @staticmethod
    def normalize_max(s: Spectrum) -> Spectrum:
        peak = float(np.max(s.intensity)) if s.intensity.size else 0.0
        if not peak > 0:
            raise InvalidInputError("Espectro nulo não pode ser normalizado")
        return s.with_intensity(s.intensity / peak)


# Instância singleton
instrument_service = InstrumentService()
