"""
Modelos da superrede biPPLN.

DesignSpec: descrição de quatro parâmetros (n_nl, n_gap, m_gap, l_domain).
DomainSequence: perfil χ(z) realizado, uma entrada por elemento (domínio ou gap).
"""
from dataclasses import dataclass
from enum import IntEnum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field


class ElementKind(IntEnum):
    DOMAIN = 0
    GAP = 1


class DesignSpec(BaseModel):
    """
    Design de poling.

    Os campos não são restringidos aqui: a validação produz um relatório
    (superlattice_service.validate) em vez de falhar na construção.
    """

    name: Optional[str] = None
    n_nl: int = Field(..., description="Domínios por stack")
    n_gap: int = Field(..., description="Número de gaps")
    m_gap: int = Field(1, description="Comprimento do gap em unidades de stack")
    l_domain_um: float = Field(5.16, description="Comprimento de domínio (μm)")
    crystal_length_budget_um: float = Field(
        63500.0,
        description="Comprimento disponível do cristal (μm)"
    )

    model_config = {"frozen": True, "extra": "forbid"}

    @property
    def l_stack(self) -> float:
        return self.n_nl * self.l_domain_um

    @property
    def l_gap(self) -> float:
        return self.m_gap * self.l_stack

    @property
    def n_stack(self) -> int:
        return self.n_gap + 1

    @property
    def element_count(self) -> int:
        return self.n_stack * self.n_nl + self.n_gap


@dataclass(frozen=True)
class DomainSequence:
    """
    Sequência ordenada de elementos (comprimento μm, sinal ±1).

    offsets[n] é a coordenada da face frontal do elemento n (offsets[0] = 0).
    """

    lengths: np.ndarray
    signs: np.ndarray
    kinds: np.ndarray
    offsets: np.ndarray
    total_length: float

    def __len__(self) -> int:
        return int(self.lengths.size)

    @property
    def elements(self) -> List[Tuple[float, int]]:
        return [(float(l), int(s)) for l, s in zip(self.lengths, self.signs)]

    @property
    def cumulative_offsets(self) -> List[float]:
        return [float(z) for z in self.offsets]

    def flipped(self) -> "DomainSequence":
        """Mesma geometria com todos os sinais invertidos."""
        return DomainSequence(
            lengths=self.lengths,
            signs=-self.signs,
            kinds=self.kinds,
            offsets=self.offsets,
            total_length=self.total_length,
        )
