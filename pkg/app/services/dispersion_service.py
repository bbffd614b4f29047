"""
Service de Dispersão.

Índice de refração extraordinário dependente de temperatura, vetores de onda,
conservação de energia, refração na face de saída e diagnósticos de QPM.

Todas as funções são puras e vetorizadas em λ (escalares ou numpy arrays).
λ em μm, T em °C, ângulos em graus.
"""
import logging
import math
import warnings
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from app.core.errors import InvalidInputError, OutOfRangeWarning
from app.models.dispersion import DispersionModel, PhotonTriplet

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


class DispersionService:
    """
    Service para o modelo de Sellmeier.

    Os coeficientes vêm como dados (DispersionModel), substituíveis via config.
    """

    def __init__(self, model: Optional[DispersionModel] = None):
        self.model = model or DispersionModel()

    # ==================== ÍNDICE ====================

    def _check_wavelength(self, lam) -> None:
        lam_arr = np.asarray(lam, dtype=float)
        if np.any(~np.isfinite(lam_arr)) or np.any(lam_arr <= 0):
            raise InvalidInputError(
                "Comprimento de onda deve ser positivo e finito",
                details={"min_um": float(np.min(lam_arr)) if lam_arr.size else None}
            )
        lo, hi = self.model.valid_range
        if np.any(lam_arr < lo) or np.any(lam_arr > hi):
            warnings.warn(
                f"λ fora da faixa de validade [{lo}, {hi}] μm do modelo de Sellmeier",
                OutOfRangeWarning,
                stacklevel=3,
            )

    def refractive_index(self, lam, temperature_c: float):
        """n(λ, T) do raio extraordinário."""
        self._check_wavelength(lam)
        n2 = np.asarray(self.model.index_squared(lam, temperature_c), dtype=float)
        lam_arr = np.broadcast_to(np.asarray(lam, dtype=float), n2.shape)
        # A partir do polo infravermelho (a5) o modelo não define índice
        bad = ~np.isfinite(n2) | (n2 <= 1.0) | (lam_arr >= self.model.a5)
        if np.any(bad):
            lam_bad = lam_arr[bad]
            raise InvalidInputError(
                f"Índice de refração indefinido em λ = {float(lam_bad[0]):.6g} μm",
                details={"lambda_um": float(lam_bad[0]), "pole_um": self.model.a5}
            )
        return np.sqrt(n2)

    def wavevector(self, lam, temperature_c: float):
        """k = 2π·n/λ (rad/μm)."""
        return TWO_PI * self.refractive_index(lam, temperature_c) / lam

    def group_index(self, lam, temperature_c: float):
        """n_g = n − λ·dn/dλ, com a derivada analítica de n²."""
        n = self.refractive_index(lam, temperature_c)
        dn_dlam = self.model.index_squared_derivative(lam, temperature_c) / (2.0 * n)
        return n - lam * dn_dlam

    # ==================== ENERGIA E ÂNGULOS ====================

    def idler_wavelength(self, lambda_p, lambda_s):
        """1/λ_i = 1/λ_p − 1/λ_s."""
        lp = np.asarray(lambda_p, dtype=float)
        ls = np.asarray(lambda_s, dtype=float)
        if np.any(lp <= 0) or np.any(ls <= lp):
            raise InvalidInputError(
                "Sem idler real: exige λ_s > λ_p > 0",
                details={"lambda_p": float(np.min(lp)), "lambda_s_min": float(np.min(ls))}
            )
        result = 1.0 / (1.0 / lp - 1.0 / ls)
        return float(result) if result.ndim == 0 else result

    def triplet(self, lambda_p: float, lambda_s: float, temperature_c: float) -> PhotonTriplet:
        """Constrói o tripleto validado (conservação de energia)."""
        lambda_i = self.idler_wavelength(lambda_p, lambda_s)
        try:
            return PhotonTriplet(
                lambda_p=lambda_p,
                lambda_s=lambda_s,
                lambda_i=lambda_i,
                temperature_c=temperature_c,
            )
        except ValueError as e:
            raise InvalidInputError(str(e), details={"lambda_p": lambda_p, "lambda_s": lambda_s})

    def internal_angle(self, theta_ext_deg, lam, temperature_c: float):
        """Snell na face de saída: sin(θ_ext) = n·sin(θ_int)."""
        theta = np.asarray(theta_ext_deg, dtype=float)
        if np.any(np.abs(theta) >= 90.0):
            raise InvalidInputError("Exige |θ_ext| < 90°")
        n = self.refractive_index(lam, temperature_c)
        return np.degrees(np.arcsin(np.sin(np.radians(theta)) / n))

    def external_angle(self, theta_int_deg, lam, temperature_c: float):
        """Inverso de internal_angle."""
        n = self.refractive_index(lam, temperature_c)
        s = n * np.sin(np.radians(np.asarray(theta_int_deg, dtype=float)))
        if np.any(np.abs(s) >= 1.0):
            raise InvalidInputError("Reflexão interna total: sem ângulo externo")
        return np.degrees(np.arcsin(s))

    # ==================== DIAGNÓSTICOS DE QPM ====================

    def collinear_mismatch(self, lambda_p: float, lambda_s, temperature_c: float):
        """k_p − k_s − k_i colinear (positivo na região de interesse)."""
        lambda_i = self.idler_wavelength(lambda_p, lambda_s)
        return (
            self.wavevector(lambda_p, temperature_c)
            - self.wavevector(lambda_s, temperature_c)
            - self.wavevector(lambda_i, temperature_c)
        )

    def coherence_length(self, lambda_p: float, lambda_s: float, temperature_c: float) -> float:
        """L_c = π/|k_p − k_s − k_i|; +inf no casamento de fase exato."""
        self.triplet(lambda_p, lambda_s, temperature_c)
        dk = float(self.collinear_mismatch(lambda_p, lambda_s, temperature_c))
        if dk == 0.0:
            return math.inf
        return math.pi / abs(dk)

    def qpm_signal_wavelength(
        self,
        l_domain_um: float,
        lambda_p: float,
        temperature_c: float,
        window: Tuple[float, float] = (0.62, 0.80)
    ) -> float:
        """
        Comprimento de onda de sinal onde |Δk|·l_domain = π (QPM de primeira ordem).

        Raises:
            InvalidInputError: se não houver raiz dentro da janela
        """
        lo = max(window[0], lambda_p * (1 + 1e-9))
        hi = min(window[1], 2.0 * lambda_p)
        target = math.pi / l_domain_um

        def residual(ls: float) -> float:
            return float(self.collinear_mismatch(lambda_p, ls, temperature_c)) - target

        f_lo, f_hi = residual(lo), residual(hi)
        if f_lo * f_hi > 0:
            raise InvalidInputError(
                "Nenhum ponto de QPM dentro da janela",
                details={"window_um": [lo, hi], "l_domain_um": l_domain_um}
            )
        root = brentq(residual, lo, hi, xtol=1e-14)
        logger.debug(f"QPM em λ_s = {root:.6f} μm (l_domain={l_domain_um}, T={temperature_c})")
        return root

    def group_index_mismatch(self, lambda_p: float, lambda_s: float, temperature_c: float) -> float:
        """|n_g,s − n_g,i|, usado nas previsões analíticas do pente."""
        lambda_i = self.idler_wavelength(lambda_p, lambda_s)
        return abs(
            float(self.group_index(lambda_s, temperature_c))
            - float(self.group_index(lambda_i, temperature_c))
        )


# Instância singleton (coeficientes padrão)
dispersion_service = DispersionService()
