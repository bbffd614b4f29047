"""
Service de Análise do Pente.

Picos, espaçamento médio, envelope gaussiano, SPCC e mapeamento sinal→idler.

Fluxo padrão (compute_comb_stats):
1. normaliza pelo máximo;
2. detecta picos com limiares relativos (altura e proeminência);
3. espaçamento médio/mediano e extensão do pente;
4. ajuste gaussiano dos máximos das franjas (ou do próprio lóbulo se houver < 4 picos).
"""
import logging
from typing import List, Optional

import numpy as np
from scipy.optimize import least_squares
from scipy.signal import find_peaks as scipy_find_peaks
from scipy.stats import pearsonr

from app.core.errors import (
    FitFailureError,
    InsufficientDataError,
    InvalidInputError,
    UndefinedCorrelationError,
)
from app.models.analysis import CombStats, EnvelopeFit, Peak
from app.models.spectrum import Channel, Spectrum

logger = logging.getLogger(__name__)

MIN_SPCC_OVERLAP = 10
MIN_ENVELOPE_PEAKS = 4


def _parabolic_vertex(x: np.ndarray, y: np.ndarray):
    """Vértice (x, y) da parábola pelos três pontos; grade não uniforme aceita."""
    x0, x1, x2 = x
    y0, y1, y2 = y
    d0, d2 = x1 - x0, x1 - x2
    denom = d0 * (y1 - y2) - d2 * (y1 - y0)
    if denom == 0:
        return float(x1), float(y1)
    xv = x1 - 0.5 * (d0 ** 2 * (y1 - y2) - d2 ** 2 * (y1 - y0)) / denom
    # Lagrange no vértice
    yv = (
        y0 * (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2))
        + y1 * (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2))
        + y2 * (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1))
    )
    return float(xv), float(max(yv, y1))


def _gaussian(params: np.ndarray, x: np.ndarray) -> np.ndarray:
    amplitude, center, sigma = params
    return amplitude * np.exp(-0.5 * np.square((x - center) / sigma))


def remap_axis(axis, lambda_p: float) -> np.ndarray:
    """λ ↦ 1/(1/λ_p − 1/λ); involução."""
    a = np.asarray(axis, dtype=float)
    return 1.0 / (1.0 / lambda_p - 1.0 / a)


class AnalysisService:
    """Service para as estatísticas reportadas do pente."""

    # ==================== PICOS ====================

    def find_peaks(
        self,
        s: Spectrum,
        min_prominence: float = 0.05,
        min_height: float = 0.1
    ) -> List[Peak]:
        """
        Máximos locais estritos acima dos limiares (frações do máximo).

        Alturas e proeminências retornadas são relativas ao máximo do espectro.
        """
        y = np.asarray(s.intensity, dtype=float)
        x = np.asarray(s.axis, dtype=float)
        if y.size < 3:
            raise InvalidInputError("find_peaks exige ao menos 3 amostras")
        peak_value = float(y.max())
        if not peak_value > 0:
            return []
        y = y / peak_value

        indices, props = scipy_find_peaks(y, height=min_height, prominence=min_prominence)
        peaks = []
        for idx, prominence in zip(indices, props["prominences"]):
            xv, yv = _parabolic_vertex(x[idx - 1:idx + 2], y[idx - 1:idx + 2])
            peaks.append(Peak(wavelength_um=xv, height=yv, prominence=float(min(prominence, yv))))

        peaks.sort(key=lambda p: p.wavelength_um)
        logger.debug(f"{len(peaks)} picos acima de {min_height:.0%} / {min_prominence:.0%}")
        return peaks

    # ==================== ESPAÇAMENTO ====================

    @staticmethod
    def _wavelengths(peaks: List[Peak]) -> np.ndarray:
        return np.sort(np.array([p.wavelength_um for p in peaks], dtype=float))

    def mean_peak_spacing(self, peaks: List[Peak]) -> float:
        if len(peaks) < 2:
            raise InsufficientDataError(
                "Espaçamento exige ao menos 2 picos", details={"peaks": len(peaks)}
            )
        return float(np.mean(np.diff(self._wavelengths(peaks))))

    def median_peak_spacing(self, peaks: List[Peak]) -> float:
        if len(peaks) < 2:
            raise InsufficientDataError(
                "Espaçamento exige ao menos 2 picos", details={"peaks": len(peaks)}
            )
        return float(np.median(np.diff(self._wavelengths(peaks))))

    def comb_span(self, peaks: List[Peak]) -> float:
        """Distância entre o primeiro e o último pico."""
        if len(peaks) < 2:
            raise InsufficientDataError("Extensão exige ao menos 2 picos")
        wl = self._wavelengths(peaks)
        return float(wl[-1] - wl[0])

    # ==================== ENVELOPE ====================

    def _fit_gaussian(self, x: np.ndarray, y: np.ndarray) -> EnvelopeFit:
        weights = np.clip(y, 0.0, None)
        if not weights.sum() > 0:
            raise InvalidInputError("Alturas nulas: nada a ajustar")
        mu0 = float(np.average(x, weights=weights))
        sigma0 = float(np.sqrt(np.average(np.square(x - mu0), weights=weights)))
        if not sigma0 > 0:
            sigma0 = float(np.ptp(x)) or 1.0
        a0 = float(y.max())

        # Coordenadas centradas em μ₀ e escaladas por σ₀
        u = (x - mu0) / sigma0
        result = least_squares(
            lambda p: _gaussian(p, u) - y,
            x0=np.array([a0, 0.0, 1.0]),
            method="lm",
            gtol=1e-10,
            ftol=1e-12,
            xtol=1e-12,
            max_nfev=200,
        )
        residual_rms = float(np.sqrt(np.mean(np.square(result.fun))))
        amplitude, center_u, sigma_u = result.x
        if result.status <= 0 or not np.all(np.isfinite(result.x)) or sigma_u == 0:
            raise FitFailureError(
                "Ajuste gaussiano não convergiu",
                residual_rms=residual_rms,
                details={"status": int(result.status), "message": result.message},
            )
        return EnvelopeFit(
            amplitude=float(amplitude),
            center_um=float(mu0 + center_u * sigma0),
            sigma_um=float(abs(sigma_u) * sigma0),
            residual_rms=residual_rms,
        )

    def fit_envelope(self, peaks: List[Peak]) -> EnvelopeFit:
        """A·exp(−(λ−μ)²/(2σ²)) pelos pares (λ, altura) dos picos, sem offset."""
        if len(peaks) < MIN_ENVELOPE_PEAKS:
            raise InsufficientDataError(
                f"Envelope exige ao menos {MIN_ENVELOPE_PEAKS} picos",
                details={"peaks": len(peaks)}
            )
        x = np.array([p.wavelength_um for p in peaks], dtype=float)
        y = np.array([p.height for p in peaks], dtype=float)
        return self._fit_gaussian(x, y)

    def fit_lobe(self, s: Spectrum, min_height: float = 0.1) -> EnvelopeFit:
        """
        Gaussiana ajustada às amostras do lóbulo principal (trecho contíguo em
        torno do máximo com I ≥ min_height·max). Usado quando não há pente.
        """
        y = np.asarray(s.intensity, dtype=float)
        peak_value = float(y.max())
        if not peak_value > 0:
            raise InvalidInputError("Espectro nulo")
        y = y / peak_value
        i = int(np.argmax(y))
        above = y >= min_height
        lo = i
        while lo > 0 and above[lo - 1]:
            lo -= 1
        hi = i
        while hi < y.size - 1 and above[hi + 1]:
            hi += 1
        if hi - lo + 1 < MIN_ENVELOPE_PEAKS:
            raise InsufficientDataError("Lóbulo com amostras insuficientes")
        return self._fit_gaussian(np.asarray(s.axis[lo:hi + 1], dtype=float), y[lo:hi + 1])

    # ==================== CORRELAÇÃO ====================

    def spcc(self, a: Spectrum, b: Spectrum) -> float:
        """Pearson entre a e b reamostrado linearmente no eixo de a."""
        b_axis = np.asarray(b.axis, dtype=float)
        b_int = np.asarray(b.intensity, dtype=float)
        order = np.argsort(b_axis)
        b_axis, b_int = b_axis[order], b_int[order]

        a_axis = np.asarray(a.axis, dtype=float)
        mask = (a_axis >= b_axis[0]) & (a_axis <= b_axis[-1])
        if int(mask.sum()) < MIN_SPCC_OVERLAP:
            raise InsufficientDataError(
                f"Sobreposição menor que {MIN_SPCC_OVERLAP} amostras",
                details={"overlap": int(mask.sum())}
            )
        xa = np.asarray(a.intensity, dtype=float)[mask]
        xb = np.interp(a_axis[mask], b_axis, b_int)
        if np.ptp(xa) == 0 or np.ptp(xb) == 0:
            raise UndefinedCorrelationError("Variância nula: correlação indefinida")
        r = pearsonr(xa, xb)[0]
        return float(np.clip(r, -1.0, 1.0))

    # ==================== CANAIS ====================

    def to_idler(self, s: Spectrum, lambda_p: float, apply_jacobian: bool = False) -> Spectrum:
        """
        Remapeia pela conservação de energia e reordena o eixo.

        Sinal (λ_p, 2λ_p] ↔ idler [2λ_p, ∞): aplicado a um espectro de idler
        devolve o canal de sinal.
        """
        axis = np.asarray(s.axis, dtype=float)
        if s.channel == Channel.SIGNAL:
            ok = np.all(axis > lambda_p) and np.all(axis <= 2.0 * lambda_p)
            target = Channel.IDLER
        else:
            ok = np.all(axis >= 2.0 * lambda_p)
            target = Channel.SIGNAL
        if not ok:
            raise InvalidInputError(
                f"Eixo fora do domínio do canal {s.channel.value}",
                details={"lambda_p": lambda_p, "min_um": float(axis.min()), "max_um": float(axis.max())}
            )
        new_axis = remap_axis(axis, lambda_p)
        intensity = np.asarray(s.intensity, dtype=float)
        if apply_jacobian:
            intensity = intensity * np.square(axis / new_axis)
        return s.with_intensity(intensity[::-1].copy(), axis=new_axis[::-1].copy(), channel=target)

    # ==================== ESTATÍSTICAS ====================

    def compute_comb_stats(
        self,
        s: Spectrum,
        min_height: float = 0.1,
        min_prominence: float = 0.05,
        reference: Optional[Spectrum] = None,
        peak_intensity: Optional[float] = None
    ) -> CombStats:
        """
        CombStats de um canal; campos ficam ausentes quando os picos não bastam.
        """
        peaks = self.find_peaks(s, min_prominence=min_prominence, min_height=min_height)
        stats = {"channel": s.channel.value, "peaks": peaks, "peak_intensity": peak_intensity}

        if len(peaks) >= 2:
            stats["mean_spacing_um"] = self.mean_peak_spacing(peaks)
            stats["median_spacing_um"] = self.median_peak_spacing(peaks)
            stats["comb_span_um"] = self.comb_span(peaks)

        try:
            if len(peaks) >= MIN_ENVELOPE_PEAKS:
                stats["envelope"] = self.fit_envelope(peaks)
            else:
                stats["envelope"] = self.fit_lobe(s, min_height=min_height)
        except (InsufficientDataError, FitFailureError) as e:
            logger.warning(f"Envelope ausente ({s.channel.value}): {e.message}")

        if reference is not None:
            stats["spcc"] = self.spcc(s, reference)

        return CombStats(**stats)


# Instância singleton
analysis_service = AnalysisService()
