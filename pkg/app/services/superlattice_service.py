"""
Service de Superrede.

Constrói e valida a sequência de domínios com sinal χ(z) de um design biPPLN.

Regras de sinal:
- dentro de um stack, domínios adjacentes têm sinais opostos;
- cada gap tem sinal oposto aos domínios vizinhos dos dois stacks;
- o primeiro domínio é +1 (convenção; a intensidade é invariante à inversão global).
"""
import logging
import math
from typing import List, Optional

import numpy as np

from app.core.errors import InvalidInputError
from app.models.superlattice import DesignSpec, DomainSequence, ElementKind
from app.schemas.design import ValidationReport
from app.services.dispersion_service import DispersionService, dispersion_service

logger = logging.getLogger(__name__)

L_DOMAIN_SANITY_UM = (1.0, 50.0)

# Meia largura do lóbulo principal de sinc²: sinc²(x) = 1/2 em x = 1.39156
SINC2_HALF_WIDTH = 1.391557


class SuperlatticeService:
    """Service para designs de poling."""

    def __init__(self, dispersion: Optional[DispersionService] = None):
        self.dispersion = dispersion or dispersion_service

    # ==================== GEOMETRIA ====================

    def _parameter_violations(self, spec: DesignSpec) -> List[str]:
        violations = []
        if spec.n_nl < 1:
            violations.append("n_nl deve ser >= 1")
        if spec.n_gap < 0:
            violations.append("n_gap deve ser >= 0")
        if spec.n_gap > 0 and spec.m_gap < 1:
            violations.append("m_gap deve ser >= 1")
        if not spec.l_domain_um > 0:
            violations.append("l_domain_um deve ser > 0")
        if not spec.crystal_length_budget_um > 0:
            violations.append("crystal_length_budget_um deve ser > 0")
        return violations

    def require_valid(self, spec: DesignSpec) -> None:
        """
        Raises:
            InvalidInputError: se algum parâmetro for não positivo
        """
        violations = self._parameter_violations(spec)
        if violations:
            raise InvalidInputError(
                "Design inválido",
                details={"violations": violations, "design": spec.model_dump()}
            )

    def design_length(self, spec: DesignSpec) -> float:
        """l_design = l_stack × (n_gap × m_gap + n_gap + 1)."""
        self.require_valid(spec)
        return spec.l_stack * (spec.n_gap * spec.m_gap + spec.n_gap + 1)

    def build_sequence(self, spec: DesignSpec) -> DomainSequence:
        """
        Realiza χ(z): n_stack·n_nl domínios e n_gap gaps (um elemento por gap).

        Offsets em múltiplos inteiros de l_domain; total_length usa a mesma
        aritmética de design_length.
        """
        total_length = self.design_length(spec)
        n_nl, n_gap = spec.n_nl, spec.n_gap
        gap_units = spec.m_gap * n_nl

        alternation = np.where(np.arange(n_nl) % 2 == 0, 1, -1).astype(np.int8)
        signs: List[np.ndarray] = []
        kinds: List[np.ndarray] = []
        units: List[np.ndarray] = []
        start = 1
        for j in range(spec.n_stack):
            stack_signs = start * alternation
            signs.append(stack_signs)
            kinds.append(np.full(n_nl, ElementKind.DOMAIN, dtype=np.int8))
            units.append(np.ones(n_nl, dtype=np.int64))
            if j < n_gap:
                gap_sign = -int(stack_signs[-1])
                signs.append(np.array([gap_sign], dtype=np.int8))
                kinds.append(np.array([ElementKind.GAP], dtype=np.int8))
                units.append(np.array([gap_units], dtype=np.int64))
                start = -gap_sign

        signs_arr = np.concatenate(signs)
        kinds_arr = np.concatenate(kinds)
        units_arr = np.concatenate(units)

        lengths = np.where(kinds_arr == ElementKind.GAP, spec.l_gap, spec.l_domain_um)
        front_units = np.concatenate([[0], np.cumsum(units_arr)[:-1]])
        offsets = front_units * spec.l_domain_um

        logger.debug(
            f"Sequência construída: {signs_arr.size} elementos, {total_length:.2f} μm"
        )
        return DomainSequence(
            lengths=lengths.astype(float),
            signs=signs_arr,
            kinds=kinds_arr,
            offsets=offsets.astype(float),
            total_length=total_length,
        )

    # ==================== AUDITORIA ====================

    def audit_sequence(self, seq: DomainSequence) -> List[str]:
        """
        Verifica as regras de sinal. Retorna a lista de violações (vazia se ok).
        """
        violations = []
        signs, kinds = seq.signs.astype(int), seq.kinds
        if signs.size and signs[0] != 1:
            violations.append("primeiro domínio deve ter sinal +1")
        for n in range(1, signs.size):
            if kinds[n] == ElementKind.DOMAIN and kinds[n - 1] == ElementKind.DOMAIN:
                if signs[n] == signs[n - 1]:
                    violations.append(f"domínios {n - 1} e {n} com mesmo sinal dentro do stack")
            elif signs[n] == signs[n - 1]:
                violations.append(f"gap adjacente ao elemento {n} não tem sinal oposto")
        if not math.isclose(math.fsum(seq.lengths), seq.total_length, rel_tol=1e-12):
            violations.append("soma dos comprimentos difere de total_length")
        return violations

    def validate(self, spec: DesignSpec) -> ValidationReport:
        """Relatório de validação; nunca lança."""
        violations = self._parameter_violations(spec)
        design_length = None
        if not violations:
            design_length = self.design_length(spec)
            if design_length > spec.crystal_length_budget_um:
                violations.append(
                    f"design_length {design_length:.2f} μm excede o orçamento "
                    f"{spec.crystal_length_budget_um:.2f} μm"
                )
        if spec.l_domain_um > 0 and not (
            L_DOMAIN_SANITY_UM[0] <= spec.l_domain_um <= L_DOMAIN_SANITY_UM[1]
        ):
            violations.append(
                f"l_domain_um fora da janela de sanidade {list(L_DOMAIN_SANITY_UM)} μm"
            )
        return ValidationReport(
            valid=not violations,
            violations=violations,
            design_length_um=design_length,
        )

    # ==================== PREVISÕES ANALÍTICAS ====================

    def predicted_comb_spacing(
        self,
        spec: DesignSpec,
        lambda_p: float,
        temperature_c: float,
        lambda_s: Optional[float] = None
    ) -> Optional[float]:
        """δλ = λ_s²/(l_stack(1+m_gap)·|n_g,s − n_g,i|); None sem gaps."""
        self.require_valid(spec)
        if spec.n_gap == 0:
            return None
        ls = lambda_s or self.dispersion.qpm_signal_wavelength(spec.l_domain_um, lambda_p, temperature_c)
        dng = self.dispersion.group_index_mismatch(lambda_p, ls, temperature_c)
        return ls ** 2 / (spec.l_stack * (1 + spec.m_gap) * dng)

    def predicted_envelope_fwhm(
        self,
        spec: DesignSpec,
        lambda_p: float,
        temperature_c: float,
        lambda_s: Optional[float] = None
    ) -> float:
        """FWHM do lóbulo sinc² de um único stack, em λ de sinal."""
        self.require_valid(spec)
        ls = lambda_s or self.dispersion.qpm_signal_wavelength(spec.l_domain_um, lambda_p, temperature_c)
        dng = self.dispersion.group_index_mismatch(lambda_p, ls, temperature_c)
        return 2.0 * SINC2_HALF_WIDTH / math.pi * ls ** 2 / (spec.l_stack * dng)


# Instância singleton
superlattice_service = SuperlatticeService()
