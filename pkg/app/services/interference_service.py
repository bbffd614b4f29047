"""
Service de Interferência Não Linear.

Intensidade de dois fótons normalizada pelo quadrado do comprimento do cristal:

    I = |Σ_n χ_n l_n sinc(Δ_n/2) exp(−iΔ_n/2 + i Σ_{n'≤n} Δ_{n'})|² / l²
    Δ_n = l_n·δ,  δ = −k_p,z + k_s,z + k_i,z

Três avaliadores da amplitude:
- amplitude_naive: soma direta elemento a elemento (referência);
- amplitude_fast: cada stack colapsado por série geométrica, gaps em forma fechada;
- quadrature_oracle: integração numérica de χ(z)·exp(iδz).

Como o material é o mesmo em todas as camadas, δ não depende do elemento.
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.errors import InvalidInputError
from app.core.parallel import evaluate_chunked, map_ordered
from app.models.spectrum import AngularMap, Channel, PhaseMismatchField, Spectrum
from app.models.superlattice import DesignSpec, DomainSequence
from app.services.dispersion_service import DispersionService, dispersion_service
from app.services.superlattice_service import SuperlatticeService, superlattice_service

logger = logging.getLogger(__name__)

MAX_THETA_PHASE_DEG = 10.0
MAX_THETA_MAP_DEG = 2.5
GEOMETRIC_FALLBACK_TOL = 1e-6


def _sinc(x):
    """sin(x)/x com sinc(0) = 1."""
    return np.sinc(x / np.pi)


def _element_factor(length: float, delta_k: np.ndarray) -> np.ndarray:
    """∫_0^l exp(iδz) dz = l·sinc(δl/2)·exp(iδl/2)."""
    half = 0.5 * delta_k * length
    return length * _sinc(half) * np.exp(1j * half)


class InterferenceService:
    """Service para a intensidade de interferência sobre grades λ e λ–θ."""

    def __init__(
        self,
        dispersion: Optional[DispersionService] = None,
        superlattice: Optional[SuperlatticeService] = None
    ):
        self.dispersion = dispersion or dispersion_service
        self.superlattice = superlattice or superlattice_service

    # ==================== DESCASAMENTO DE FASE ====================

    def phase_mismatch(
        self,
        lambda_s,
        theta_ext_deg: float,
        lambda_p: float,
        temperature_c: float
    ) -> PhaseMismatchField:
        """
        δ = −k_p,z + k_s,z + k_i,z para sinal em θ_ext (graus, ar).

        O idler fecha o momento transversal (k_i,⊥ = −q); se q > k_i o idler
        é evanescente e o ponto é marcado.
        """
        ls = np.atleast_1d(np.asarray(lambda_s, dtype=float))
        if np.any(ls <= lambda_p) or np.any(ls >= 2.0 * lambda_p):
            raise InvalidInputError(
                "Exige λ_p < λ_s < 2·λ_p",
                details={"lambda_p": lambda_p, "min_um": float(ls.min()), "max_um": float(ls.max())}
            )
        if abs(theta_ext_deg) >= MAX_THETA_PHASE_DEG:
            raise InvalidInputError(
                f"Exige |θ_ext| < {MAX_THETA_PHASE_DEG}°",
                details={"theta_ext_deg": theta_ext_deg}
            )

        li = self.dispersion.idler_wavelength(lambda_p, ls)
        k_p = self.dispersion.wavevector(lambda_p, temperature_c)
        k_s = self.dispersion.wavevector(ls, temperature_c)
        k_i = self.dispersion.wavevector(li, temperature_c)

        theta_int = np.radians(self.dispersion.internal_angle(theta_ext_deg, ls, temperature_c))
        q = k_s * np.sin(theta_int)

        evanescent = np.abs(q) > k_i
        q2 = np.square(q)
        k_sz = np.sqrt(np.square(k_s) - q2)
        k_iz = np.sqrt(np.where(evanescent, 0.0, np.square(k_i) - q2))
        delta_k = (-k_p + k_sz) + k_iz
        delta_k = np.where(evanescent, 0.0, delta_k)
        return PhaseMismatchField(delta_k=delta_k, evanescent=evanescent)

    # ==================== AMPLITUDES ====================

    def amplitude_naive(self, seq: DomainSequence, delta_k) -> np.ndarray:
        """Soma direta com acumulador de fase corrido (soma simples em double)."""
        if len(seq) == 0:
            raise InvalidInputError("Sequência vazia")
        dk = np.asarray(delta_k, dtype=float)
        amplitude = np.zeros(dk.shape, dtype=complex)
        phase = np.zeros(dk.shape, dtype=float)
        for length, sign in zip(seq.lengths, seq.signs):
            delta_n = length * dk
            phase = phase + delta_n
            amplitude += sign * length * _sinc(0.5 * delta_n) * np.exp(1j * (phase - 0.5 * delta_n))
        return amplitude

    def amplitude_fast(self, spec: DesignSpec, delta_k) -> np.ndarray:
        """
        Reagrupamento exato da soma: por stack, série geométrica de razão
        r = −exp(iδ·l_domain); cada gap é um único termo em forma fechada.

        Perto de |1 − r| = 0 (centro de QPM, Δ_domain = π) a série é somada
        diretamente para os pontos afetados.
        """
        self.superlattice.require_valid(spec)
        dk = np.asarray(delta_k, dtype=float)
        n_nl, d = spec.n_nl, spec.l_domain_um

        domain = _element_factor(d, dk)
        r = -np.exp(1j * d * dk)
        one_minus_r = 1.0 - r
        singular = np.abs(one_minus_r) < GEOMETRIC_FALLBACK_TOL
        parity = 1.0 if n_nl % 2 == 0 else -1.0

        series = np.empty(dk.shape, dtype=complex)
        regular = ~singular
        # r^n = (−1)^n·exp(iδ·d·n)
        series[regular] = (
            (1.0 - parity * np.exp(1j * (d * n_nl) * dk[regular])) / one_minus_r[regular]
        )
        if np.any(singular):
            dks = dk[singular]
            acc = np.zeros(dks.shape, dtype=complex)
            for m in range(n_nl):
                acc += (1.0 if m % 2 == 0 else -1.0) * np.exp(1j * (d * m) * dks)
            series[singular] = acc
        stack = domain * series

        gap = _element_factor(spec.l_gap, dk) if spec.n_gap else None

        # Sinais: stack j começa com s_j = step^j; gap j tem sinal −s_j·step
        step = 1.0 if n_nl % 2 == 1 else -1.0
        period_units = n_nl * (1 + spec.m_gap)
        stack_sum = np.zeros(dk.shape, dtype=complex)
        gap_sum = np.zeros(dk.shape, dtype=complex)
        s = 1.0
        for j in range(spec.n_stack):
            z_stack = (j * period_units) * d
            stack_sum += s * np.exp(1j * z_stack * dk)
            if j < spec.n_gap:
                z_gap = (j * period_units + n_nl) * d
                gap_sum += (-s * step) * np.exp(1j * z_gap * dk)
            s *= step

        amplitude = stack * stack_sum
        if gap is not None:
            amplitude = amplitude + gap * gap_sum
        return amplitude

    def quadrature_oracle(self, seq: DomainSequence, delta_k, steps_per_domain: int = 10_000):
        """
        Regra do ponto médio para ∫_0^l χ(z)·exp(iδz) dz.

        Cada elemento recebe steps_per_domain·ceil(l_n/l_min) células uniformes.
        """
        if steps_per_domain < 4:
            raise InvalidInputError("steps_per_domain deve ser >= 4")
        dk = np.atleast_1d(np.asarray(delta_k, dtype=float))
        l_min = float(seq.lengths.min())
        amplitude = np.zeros(dk.shape, dtype=complex)
        for length, sign, z0 in zip(seq.lengths, seq.signs, seq.offsets):
            cells = steps_per_domain * math.ceil(length / l_min - 1e-9)
            h = length / cells
            z_mid = z0 + (np.arange(cells) + 0.5) * h
            amplitude += sign * h * np.exp(1j * np.outer(dk, z_mid)).sum(axis=1)
        return amplitude if np.ndim(delta_k) else amplitude[0]

    @staticmethod
    def intensity(amplitude, total_length: float):
        """I = |A|²/l²."""
        if not total_length > 0:
            raise InvalidInputError("total_length deve ser > 0")
        return np.square(np.abs(amplitude)) / total_length ** 2

    # ==================== GRADES ====================

    @staticmethod
    def _check_grid(lambda_grid: np.ndarray, lambda_p: float) -> None:
        if lambda_grid.ndim != 1 or lambda_grid.size < 2:
            raise InvalidInputError("Grade de λ deve ser 1-D com ao menos 2 pontos")
        if not np.all(np.diff(lambda_grid) > 0):
            raise InvalidInputError("Grade de λ deve ser estritamente crescente")
        if lambda_grid[0] <= lambda_p or lambda_grid[-1] >= 2.0 * lambda_p:
            raise InvalidInputError(
                "Grade de λ deve estar dentro de (λ_p, 2·λ_p)",
                details={"min_um": float(lambda_grid[0]), "max_um": float(lambda_grid[-1])}
            )

    def _evaluate_column(
        self,
        spec: DesignSpec,
        lambda_grid: np.ndarray,
        theta_ext_deg: float,
        lambda_p: float,
        temperature_c: float,
        threads: int,
        method: str = "fast"
    ) -> np.ndarray:
        """Intensidade numa coluna θ fixa; blocos fixos garantem determinismo."""
        total_length = self.superlattice.design_length(spec)
        seq = self.superlattice.build_sequence(spec) if method == "naive" else None

        def evaluate(sl: slice) -> np.ndarray:
            field = self.phase_mismatch(lambda_grid[sl], theta_ext_deg, lambda_p, temperature_c)
            if method == "naive":
                amplitude = self.amplitude_naive(seq, field.delta_k)
            else:
                amplitude = self.amplitude_fast(spec, field.delta_k)
            values = self.intensity(amplitude, total_length)
            return np.where(field.evanescent, 0.0, values)

        out = np.empty(lambda_grid.size, dtype=float)
        return evaluate_chunked(evaluate, out, threads=threads)

    def spectrum(
        self,
        spec: DesignSpec,
        lambda_grid: Sequence[float],
        theta_ext_deg: float = 0.0,
        lambda_p: float = 0.532,
        temperature_c: float = 22.0,
        threads: Optional[int] = None,
        method: str = "fast"
    ) -> Spectrum:
        """Corte espectral em θ_ext fixo (colinear por padrão)."""
        grid = np.asarray(lambda_grid, dtype=float)
        self._check_grid(grid, lambda_p)
        if method not in ("fast", "naive"):
            raise InvalidInputError(f"Método desconhecido: {method}")
        n_threads = threads or settings.DEFAULT_THREADS
        logger.info(
            f"Espectro: n_nl={spec.n_nl} n_gap={spec.n_gap} m_gap={spec.m_gap} "
            f"pontos={grid.size} θ={theta_ext_deg}° T={temperature_c} °C ({method})"
        )
        intensity = self._evaluate_column(
            spec, grid, theta_ext_deg, lambda_p, temperature_c, n_threads, method
        )
        return Spectrum(
            axis=grid,
            intensity=intensity,
            channel=Channel.SIGNAL,
            theta_ext_deg=theta_ext_deg,
            temperature_c=temperature_c,
            convolved=False,
            metadata={"lambda_p_um": lambda_p, "design": spec.model_dump()},
        )

    def angular_map(
        self,
        spec: DesignSpec,
        lambda_grid: Sequence[float],
        theta_grid: Sequence[float],
        lambda_p: float = 0.532,
        temperature_c: float = 22.0,
        threads: Optional[int] = None
    ) -> AngularMap:
        """
        Mapa I(λ, θ). Cada coluna é avaliada exatamente como spectrum(), de
        modo que a coluna θ = 0 coincide bit a bit com o espectro colinear.
        """
        grid = np.asarray(lambda_grid, dtype=float)
        thetas = np.asarray(theta_grid, dtype=float)
        self._check_grid(grid, lambda_p)
        if thetas.ndim != 1 or thetas.size == 0:
            raise InvalidInputError("Grade de θ deve ser 1-D e não vazia")
        if np.any(np.abs(thetas) > MAX_THETA_MAP_DEG):
            raise InvalidInputError(
                f"Grade de θ deve estar em [−{MAX_THETA_MAP_DEG}°, +{MAX_THETA_MAP_DEG}°]",
                details={"min_deg": float(thetas.min()), "max_deg": float(thetas.max())}
            )
        n_threads = threads or settings.DEFAULT_THREADS
        logger.info(
            f"Mapa λ–θ: {grid.size} × {thetas.size} pontos, T={temperature_c} °C, "
            f"{n_threads} thread(s)"
        )

        columns = map_ordered(
            lambda theta: self._evaluate_column(
                spec, grid, float(theta), lambda_p, temperature_c, threads=1
            ),
            list(thetas),
            threads=n_threads,
        )
        return AngularMap(
            lambda_axis=grid,
            theta_axis=thetas,
            intensity=np.column_stack(columns),
            channel=Channel.SIGNAL,
            temperature_c=temperature_c,
            convolved=False,
            metadata={"lambda_p_um": lambda_p, "design": spec.model_dump()},
        )


# Instância singleton
interference_service = InterferenceService()
