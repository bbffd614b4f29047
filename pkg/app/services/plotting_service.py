"""
Service de Gráficos.

Saída apenas de apresentação: a única transformação numérica é a
normalização pelo máximo. Backend Agg (sem display).
"""
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from app.core.config import settings  # noqa: E402
from app.core.errors import InvalidInputError  # noqa: E402
from app.models.spectrum import AngularMap, Spectrum  # noqa: E402

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _normalized(values: np.ndarray) -> np.ndarray:
    peak = float(np.max(values)) if values.size else 0.0
    return values / peak if peak > 0 else values


class PlottingService:
    """Service para figuras de espectros, cortes angulares e mapas λ–θ."""

    def _target(self, path: PathLike) -> Path:
        target = Path(path)
        fmt = target.suffix.lstrip(".").lower()
        if fmt not in settings.PLOT_FORMATS:
            raise InvalidInputError(
                f"Formato de imagem '{fmt}' não suportado",
                details={"allowed": settings.PLOT_FORMATS}
            )
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def plot_spectra(
        self,
        path: PathLike,
        spectra: Sequence[Spectrum],
        labels: Optional[List[str]] = None,
        reference: Optional[Spectrum] = None,
        title: Optional[str] = None,
        xlabel: str = "Comprimento de onda (μm)"
    ) -> Path:
        """Curvas normalizadas; referência opcional sobreposta."""
        if not spectra:
            raise InvalidInputError("Nenhum espectro para desenhar")
        target = self._target(path)
        labels = labels or [f"espectro {i + 1}" for i in range(len(spectra))]

        fig, ax = plt.subplots(figsize=(8, 4.5))
        try:
            for s, label in zip(spectra, labels):
                ax.plot(s.axis, _normalized(np.asarray(s.intensity)), lw=1.0, label=label)
            if reference is not None:
                ax.plot(
                    reference.axis,
                    _normalized(np.asarray(reference.intensity)),
                    lw=1.0,
                    ls="--",
                    color="tab:orange",
                    label="referência",
                )
            ax.set_xlabel(xlabel)
            ax.set_ylabel("Intensidade normalizada")
            if title:
                ax.set_title(title)
            ax.legend(loc="upper right")
            fig.tight_layout()
            fig.savefig(target, dpi=150)
        finally:
            plt.close(fig)
        logger.info(f"Gráfico escrito: {target}")
        return target

    def plot_map(self, path: PathLike, angular_map: AngularMap, title: Optional[str] = None) -> Path:
        """Mapa de calor: λ no eixo vertical, θ no horizontal."""
        target = self._target(path)
        fig, ax = plt.subplots(figsize=(6, 6))
        try:
            mesh = ax.pcolormesh(
                angular_map.theta_axis,
                angular_map.lambda_axis,
                _normalized(np.asarray(angular_map.intensity)),
                shading="nearest",
                cmap="inferno",
            )
            fig.colorbar(mesh, ax=ax, label="Intensidade normalizada")
            ax.set_xlabel("Ângulo externo (graus)")
            ax.set_ylabel("Comprimento de onda de sinal (μm)")
            if title:
                ax.set_title(title)
            fig.tight_layout()
            fig.savefig(target, dpi=150)
        finally:
            plt.close(fig)
        logger.info(f"Mapa escrito: {target}")
        return target


# Instância singleton
plotting_service = PlottingService()
