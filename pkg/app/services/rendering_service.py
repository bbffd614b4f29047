"""
Service de Renderização de Artefatos.

Artefatos (CSV/JSON) são DERIVADOS: sempre reconstruíveis a partir do
RunConfig registrado no manifesto. Nada aqui altera valores numéricos.

Formato:
- floats com 9 algarismos significativos (settings.CSV_FLOAT_FORMAT);
- JSON com chaves ordenadas e indentação fixa;
- sem timestamps, para que reexecuções sejam byte a byte idênticas.
"""
import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd

from app.core.config import settings
from app.core.errors import InvalidInputError
from app.models.spectrum import AngularMap, Channel, Spectrum
from app.models.superlattice import DomainSequence, ElementKind

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MAP_CORNER_LABEL = "wavelength_um"


class RenderingService:
    """Service para escrita e leitura dos artefatos de execução."""

    def __init__(self, float_format: Optional[str] = None):
        self.float_format = float_format or settings.CSV_FLOAT_FORMAT

    def _write_frame(self, df: pd.DataFrame, path: PathLike, **kwargs) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(target, float_format=self.float_format, lineterminator="\n", **kwargs)
        logger.info(f"Artefato escrito: {target}")
        return target

    # ==================== ESPECTROS ====================

    def write_spectrum_csv(
        self,
        path: PathLike,
        raw: Spectrum,
        convolved: Optional[Spectrum] = None
    ) -> Path:
        """Colunas: wavelength_um, intensity (pré-convolução), intensity_convolved."""
        data = {"wavelength_um": raw.axis, "intensity": raw.intensity}
        if convolved is not None:
            if convolved.axis.shape != raw.axis.shape:
                raise InvalidInputError("Espectros com eixos diferentes")
            data["intensity_convolved"] = convolved.intensity
        return self._write_frame(pd.DataFrame(data), path, index=False)

    def read_spectrum_csv(
        self,
        path: PathLike,
        column: Optional[str] = None,
        channel: Channel = Channel.SIGNAL
    ) -> Spectrum:
        """
        Lê um espectro de CSV.

        Aceita os CSVs do simulador e referências externas de duas colunas
        (wavelength_um, intensity) em grade monotônica arbitrária. Sem
        `column`, usa intensity_convolved se existir, senão a segunda coluna.
        """
        source = Path(path)
        if not source.is_file():
            raise InvalidInputError(f"Arquivo não encontrado: {source}")
        try:
            df = pd.read_csv(source)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise InvalidInputError(f"CSV inválido: {source}", details={"reason": str(e)})
        if df.shape[1] < 2 or len(df) < 2:
            raise InvalidInputError(f"CSV precisa de 2 colunas e 2 linhas: {source}")

        if column is None:
            column = "intensity_convolved" if "intensity_convolved" in df.columns else df.columns[1]
        if column not in df.columns:
            raise InvalidInputError(f"Coluna '{column}' ausente em {source}")

        axis = df.iloc[:, 0].to_numpy(dtype=float)
        intensity = df[column].to_numpy(dtype=float)
        if not (np.all(np.diff(axis) > 0) or np.all(np.diff(axis) < 0)):
            raise InvalidInputError(f"Eixo não monotônico em {source}")
        if axis[0] > axis[-1]:
            axis, intensity = axis[::-1].copy(), intensity[::-1].copy()
        return Spectrum(
            axis=axis,
            intensity=intensity,
            channel=channel,
            convolved=column == "intensity_convolved",
            metadata={"source": str(source), "column": column},
        )

    # ==================== MAPAS ====================

    def write_map_csv(self, path: PathLike, angular_map: AngularMap) -> Path:
        """Primeira linha: rótulos θ (graus); primeira coluna: λ (μm)."""
        labels = [self.float_format % t for t in angular_map.theta_axis]
        if len(set(labels)) != len(labels):
            raise InvalidInputError("Rótulos de θ colidem no formato de exportação")
        index = pd.Index(angular_map.lambda_axis, name=MAP_CORNER_LABEL)
        df = pd.DataFrame(angular_map.intensity, index=index, columns=labels)
        return self._write_frame(df, path)

    def read_map_csv(self, path: PathLike) -> AngularMap:
        source = Path(path)
        if not source.is_file():
            raise InvalidInputError(f"Arquivo não encontrado: {source}")
        try:
            df = pd.read_csv(source, index_col=0)
            theta = np.array([float(c) for c in df.columns])
        except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
            raise InvalidInputError(f"Mapa inválido: {source}", details={"reason": str(e)})
        return AngularMap(
            lambda_axis=df.index.to_numpy(dtype=float),
            theta_axis=theta,
            intensity=df.to_numpy(dtype=float),
            metadata={"source": str(source)},
        )

    def write_cross_section_csv(
        self,
        path: PathLike,
        angular_map: AngularMap,
        lambda_um: float,
        convolved: Optional[AngularMap] = None
    ) -> Path:
        """Corte angular na linha de grade mais próxima de lambda_um."""
        i = int(np.argmin(np.abs(angular_map.lambda_axis - lambda_um)))
        data = {"theta_deg": angular_map.theta_axis, "intensity": angular_map.intensity[i, :]}
        if convolved is not None:
            data["intensity_convolved"] = convolved.intensity[i, :]
        logger.debug(f"Corte angular em λ = {angular_map.lambda_axis[i]:.6f} μm")
        return self._write_frame(pd.DataFrame(data), path, index=False)

    # ==================== SEQUÊNCIAS ====================

    def export_sequence_csv(self, path: PathLike, seq: DomainSequence) -> Path:
        """Uma linha por elemento: índice, tipo, sinal, face frontal e comprimento."""
        df = pd.DataFrame({
            "index": np.arange(len(seq)),
            "kind": [ElementKind(int(k)).name.lower() for k in seq.kinds],
            "sign": seq.signs.astype(int),
            "z_front_um": seq.offsets,
            "length_um": seq.lengths,
        })
        return self._write_frame(df, path, index=False)

    # ==================== JSON ====================

    @staticmethod
    def to_json(data: Any) -> str:
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def write_json(self, path: PathLike, data: Any) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.to_json(data), encoding="utf-8")
        logger.info(f"Artefato escrito: {target}")
        return target


# Instância singleton
rendering_service = RenderingService()
