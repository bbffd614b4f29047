"""
Pipeline de Simulação.

Orquestra os services para cada comando do CLI e grava os artefatos.

Fluxo de `simulate`:
1. Validar o design
2. Espectro colinear (interferência)
3. Convolução instrumental e normalização
4. Estatísticas do pente (sinal e idler remapeado)
5. Artefatos: spectrum.csv, stats.json, run_manifest.json

Cada etapa emite um PipelineEvent no log; nenhum evento entra nos artefatos.
"""
import logging
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from app import __version__
from app.core.config import settings
from app.core.errors import ConfigError, InvalidInputError
from app.models.analysis import CombStats
from app.models.spectrum import AngularMap, Spectrum
from app.models.superlattice import DesignSpec, ElementKind
from app.schemas.design import DesignSummary
from app.schemas.run_config import RunConfig, RunManifest, ShiftStep, ShiftSummary
from app.services.analysis_service import AnalysisService
from app.services.instrument_service import InstrumentService
from app.services.interference_service import InterferenceService
from app.services.rendering_service import RenderingService

logger = logging.getLogger(__name__)


class PipelineEventType(str, Enum):
    """Tipos de eventos do pipeline."""
    STARTED = "started"
    DESIGN_VALIDATED = "design_validated"
    SPECTRUM_COMPUTED = "spectrum_computed"
    MAP_COMPUTED = "map_computed"
    CONVOLVED = "convolved"
    STATS_COMPUTED = "stats_computed"
    ARTIFACT_WRITTEN = "artifact_written"
    COMPLETED = "completed"


@dataclass
class PipelineEvent:
    """Evento do pipeline (apenas log)."""
    type: PipelineEventType
    data: Dict[str, Any]
    timestamp: datetime = None

    def __post_init__(self):
        if self.timestamp is None:
            self.timestamp = datetime.utcnow()


@dataclass
class SimulationResult:
    """Saída de `simulate` e de cada temperatura de `sweep-temperature`."""
    raw: Spectrum
    convolved: Spectrum
    signal_stats: CombStats
    idler_stats: CombStats
    artifacts: List[Path] = field(default_factory=list)


@dataclass
class MapResult:
    raw: AngularMap
    convolved: AngularMap
    artifacts: List[Path] = field(default_factory=list)


class SimulationPipeline:
    """
    Pipeline de simulação.

    Os services chegam prontos (ver app/cli/deps.py): o DispersionModel do
    RunConfig já está injetado no interference_service.
    """

    def __init__(
        self,
        config: RunConfig,
        interference_service: InterferenceService,
        instrument_service: InstrumentService,
        analysis_service: AnalysisService,
        rendering_service: RenderingService,
        threads: int = 1
    ):
        self.config = config
        self.interference = interference_service
        self.superlattice = interference_service.superlattice
        self.dispersion = interference_service.dispersion
        self.instrument = instrument_service
        self.analysis = analysis_service
        self.rendering = rendering_service
        self.threads = threads
        self.events: List[PipelineEvent] = []

    def _emit(self, event_type: PipelineEventType, **data) -> PipelineEvent:
        event = PipelineEvent(type=event_type, data=data)
        self.events.append(event)
        logger.info(f"[{event_type.value}] {data}")
        return event

    # ==================== ETAPAS ====================

    def _require_valid_design(self, spec: DesignSpec) -> None:
        report = self.superlattice.validate(spec)
        self._emit(
            PipelineEventType.DESIGN_VALIDATED,
            valid=report.valid,
            violations=report.violations,
        )
        if not report.valid:
            raise ConfigError(
                "Design inválido",
                details={"violations": report.violations, "design": spec.model_dump()}
            )

    def _manifest(self, command: str, artifacts: Sequence[Path], out_dir: Path, **extra) -> RunManifest:
        return RunManifest(
            app_version=__version__,
            command=command,
            config=self.config.model_dump(mode="json"),
            process={
                "GRID_CHUNK_SIZE": settings.GRID_CHUNK_SIZE,
                "CSV_FLOAT_FORMAT": settings.CSV_FLOAT_FORMAT,
            },
            artifacts=sorted(str(Path(p).relative_to(out_dir)) for p in artifacts),
            extra=extra,
        )

    def _write_manifest(self, command: str, artifacts: List[Path], out_dir: Path, **extra) -> Path:
        manifest = self._manifest(command, artifacts, out_dir, **extra)
        path = self.rendering.write_json(out_dir / "run_manifest.json", manifest.model_dump(mode="json"))
        self._emit(PipelineEventType.ARTIFACT_WRITTEN, path=str(path))
        return path

    def compute_spectrum(self, temperature_c: Optional[float] = None) -> SimulationResult:
        """Espectro colinear bruto + convoluído + estatísticas dos dois canais."""
        cfg = self.config
        temperature = cfg.temperature_c if temperature_c is None else temperature_c

        raw = self.interference.spectrum(
            cfg.design,
            cfg.signal_grid.points(),
            theta_ext_deg=0.0,
            lambda_p=cfg.pump_wavelength_um,
            temperature_c=temperature,
            threads=self.threads,
            method=cfg.method,
        )
        peak_intensity = float(np.max(raw.intensity))
        self._emit(
            PipelineEventType.SPECTRUM_COMPUTED,
            points=int(raw.axis.size),
            temperature_c=temperature,
            peak_intensity=peak_intensity,
        )

        convolved = self.instrument.convolve_spectrum(raw, cfg.instrument)
        self._emit(PipelineEventType.CONVOLVED, spectral_fwhm_um=cfg.instrument.spectral_fwhm_um)

        normalized = self.instrument.normalize_max(convolved)
        thresholds = cfg.analysis
        signal_stats = self.analysis.compute_comb_stats(
            normalized,
            min_height=thresholds.min_height,
            min_prominence=thresholds.min_prominence,
            peak_intensity=peak_intensity,
        )
        idler = self.analysis.to_idler(
            normalized, cfg.pump_wavelength_um, apply_jacobian=thresholds.apply_jacobian
        )
        idler_stats = self.analysis.compute_comb_stats(
            idler,
            min_height=thresholds.min_height,
            min_prominence=thresholds.min_prominence,
            peak_intensity=peak_intensity,
        )
        self._emit(
            PipelineEventType.STATS_COMPUTED,
            signal_peaks=len(signal_stats.peaks),
            idler_peaks=len(idler_stats.peaks),
        )
        return SimulationResult(
            raw=raw,
            convolved=convolved,
            signal_stats=signal_stats,
            idler_stats=idler_stats,
        )

    # ==================== COMANDOS ====================

    def simulate(self, out_dir: Path, reference: Optional[Spectrum] = None) -> SimulationResult:
        """spectrum.csv, stats.json e run_manifest.json em out_dir."""
        self._emit(PipelineEventType.STARTED, command="simulate", design=self.config.design.name)
        self._require_valid_design(self.config.design)

        result = self.compute_spectrum()
        if reference is not None:
            normalized = self.instrument.normalize_max(result.convolved)
            spcc = self.analysis.spcc(normalized, reference)
            result.signal_stats = result.signal_stats.model_copy(update={"spcc": spcc})

        artifacts = [
            self.rendering.write_spectrum_csv(out_dir / "spectrum.csv", result.raw, result.convolved),
            self.rendering.write_json(
                out_dir / "stats.json",
                {
                    "signal": result.signal_stats.to_export(),
                    "idler": result.idler_stats.to_export(),
                },
            ),
        ]
        artifacts.append(self._write_manifest("simulate", artifacts, out_dir))
        result.artifacts = artifacts
        self._emit(PipelineEventType.COMPLETED, command="simulate", artifacts=len(artifacts))
        return result

    def map2d(self, out_dir: Path) -> MapResult:
        """map.csv (bruto), map_convolved.csv, map.json e cross_section.csv."""
        cfg = self.config
        self._emit(PipelineEventType.STARTED, command="map2d", design=cfg.design.name)
        self._require_valid_design(cfg.design)

        raw = self.interference.angular_map(
            cfg.design,
            cfg.signal_grid.points(),
            cfg.angle_grid.points(),
            lambda_p=cfg.pump_wavelength_um,
            temperature_c=cfg.temperature_c,
            threads=self.threads,
        )
        self._emit(PipelineEventType.MAP_COMPUTED, shape=list(raw.intensity.shape))
        convolved = self.instrument.convolve_map(raw, cfg.instrument)
        self._emit(
            PipelineEventType.CONVOLVED,
            spectral_fwhm_um=cfg.instrument.spectral_fwhm_um,
            angular_fwhm_deg=cfg.instrument.angular_fwhm_deg,
        )

        artifacts = [
            self.rendering.write_map_csv(out_dir / "map.csv", raw),
            self.rendering.write_map_csv(out_dir / "map_convolved.csv", convolved),
            self.rendering.write_cross_section_csv(
                out_dir / "cross_section.csv",
                raw,
                cfg.cross_section_wavelength_um,
                convolved=convolved,
            ),
        ]
        sidecar = {
            "channel": raw.channel.value,
            "temperature_c": raw.temperature_c,
            "lambda_p_um": cfg.pump_wavelength_um,
            "lambda_axis": cfg.signal_grid.model_dump(),
            "theta_axis": cfg.angle_grid.model_dump(),
            "shape": list(raw.intensity.shape),
            "cross_section_wavelength_um": cfg.cross_section_wavelength_um,
            "design": cfg.design.model_dump(),
            "instrument": cfg.instrument.model_dump(),
            "files": {"raw": "map.csv", "convolved": "map_convolved.csv"},
        }
        artifacts.append(self.rendering.write_json(out_dir / "map.json", sidecar))
        artifacts.append(self._write_manifest("map2d", artifacts, out_dir))
        self._emit(PipelineEventType.COMPLETED, command="map2d", artifacts=len(artifacts))
        return MapResult(raw=raw, convolved=convolved, artifacts=artifacts)

    def sweep_temperature(self, out_dir: Path, temperatures: Sequence[float]) -> ShiftSummary:
        """Um espectro por temperatura e shift_summary.json."""
        temps = [float(t) for t in temperatures]
        if len(temps) < 2:
            raise ConfigError("sweep-temperature exige ao menos 2 temperaturas")
        self._emit(PipelineEventType.STARTED, command="sweep-temperature", temperatures=temps)
        self._require_valid_design(self.config.design)

        artifacts: List[Path] = []
        signal_centers: List[Optional[float]] = []
        idler_centers: List[Optional[float]] = []
        for t in temps:
            result = self.compute_spectrum(temperature_c=t)
            artifacts.append(
                self.rendering.write_spectrum_csv(
                    out_dir / f"spectrum_T{t:g}.csv", result.raw, result.convolved
                )
            )
            signal_centers.append(
                result.signal_stats.envelope.center_um if result.signal_stats.envelope else None
            )
            idler_centers.append(
                result.idler_stats.envelope.center_um if result.idler_stats.envelope else None
            )

        steps = []
        for k in range(1, len(temps)):
            steps.append(ShiftStep(
                from_c=temps[k - 1],
                to_c=temps[k],
                signal_shift_um=_difference(signal_centers[k - 1], signal_centers[k]),
                idler_shift_um=_difference(idler_centers[k - 1], idler_centers[k]),
            ))

        summary = ShiftSummary(
            temperatures_c=temps,
            signal_centers_um=signal_centers,
            idler_centers_um=idler_centers,
            steps=steps,
            monotone_signal=_is_monotone([s.signal_shift_um for s in steps]),
        )
        artifacts.append(
            self.rendering.write_json(out_dir / "shift_summary.json", summary.model_dump(mode="json"))
        )
        artifacts.append(self._write_manifest("sweep-temperature", artifacts, out_dir, temperatures_c=temps))
        self._emit(PipelineEventType.COMPLETED, command="sweep-temperature", artifacts=len(artifacts))
        return summary

    def validate_design(self, spec: Optional[DesignSpec] = None) -> DesignSummary:
        """Relatório de validação + grandezas derivadas; não lança para designs inválidos."""
        spec = spec or self.config.design
        report = self.superlattice.validate(spec)
        summary = {
            "name": spec.name,
            "report": report,
            "l_stack_um": spec.l_stack,
            "l_gap_um": spec.l_gap,
            "l_design_um": report.design_length_um,
            "element_count": spec.element_count,
            "domain_count": spec.n_stack * spec.n_nl,
            "gap_count": spec.n_gap,
        }
        if report.design_length_um is not None:
            lp, t = self.config.pump_wavelength_um, self.config.temperature_c
            try:
                center = self.dispersion.qpm_signal_wavelength(spec.l_domain_um, lp, t)
                summary["qpm_signal_wavelength_um"] = center
                summary["predicted_spacing_um"] = self.superlattice.predicted_comb_spacing(
                    spec, lp, t, lambda_s=center
                )
                summary["predicted_envelope_fwhm_um"] = self.superlattice.predicted_envelope_fwhm(
                    spec, lp, t, lambda_s=center
                )
            except InvalidInputError as e:
                logger.warning(f"Sem previsão analítica: {e.message}")
        return DesignSummary(**summary)

    def export_sequence(self, path: Path, spec: Optional[DesignSpec] = None) -> Path:
        spec = spec or self.config.design
        seq = self.superlattice.build_sequence(spec)
        logger.info(
            f"Sequência: {int(np.sum(seq.kinds == ElementKind.DOMAIN))} domínios, "
            f"{int(np.sum(seq.kinds == ElementKind.GAP))} gaps"
        )
        return self.rendering.export_sequence_csv(path, seq)


def _difference(a: Optional[float], b: Optional[float]) -> Optional[float]:
    if a is None or b is None:
        return None
    return b - a


def _is_monotone(values: List[Optional[float]]) -> Optional[bool]:
    known = [v for v in values if v is not None]
    if not known:
        return None
    return all(v >= 0 for v in known) or all(v <= 0 for v in known)
