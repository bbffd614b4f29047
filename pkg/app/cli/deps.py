"""
Dependências do CLI.

Resolução de configuração e montagem dos services:
- leitura do JSON de configuração
- overrides `--set chave.pontilhada=valor`
- validação do RunConfig (erros de tipo → código 2, violações → código 1)
- services com o DispersionModel da execução
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple

from pydantic import ValidationError

from app.core.config import settings
from app.core.errors import ConfigError, ConfigParseError
from app.pipeline import SimulationPipeline
from app.schemas.run_config import RunConfig
from app.services.analysis_service import AnalysisService
from app.services.dispersion_service import DispersionService
from app.services.instrument_service import InstrumentService
from app.services.interference_service import InterferenceService
from app.services.plotting_service import PlottingService, plotting_service
from app.services.rendering_service import RenderingService, rendering_service
from app.services.superlattice_service import SuperlatticeService

logger = logging.getLogger(__name__)

# Tipos de erro do pydantic tratados como erro de parse (código 2)
PARSE_ERROR_TYPES = {"missing", "extra_forbidden", "json_invalid", "literal_error", "model_type", "dict_type"}


def _is_parse_error(error_type: str) -> bool:
    return error_type in PARSE_ERROR_TYPES or error_type.endswith(("_type", "_parsing"))


def _loc(error: Dict[str, Any]) -> str:
    return ".".join(str(part) for part in error.get("loc", ()))


# ==================== LEITURA ====================

def _resolve_config_path(path: str) -> Path:
    """Caminho existente ou nome de preset em DESIGNS_DIR (`1` → designs/1.json)."""
    source = Path(path)
    if source.is_file():
        return source
    preset = Path(settings.DESIGNS_DIR) / f"{path}.json"
    if preset.is_file():
        logger.debug(f"Preset '{path}' resolvido em {preset}")
        return preset
    raise ConfigError(
        f"Arquivo de configuração não encontrado: {source}",
        details={"path": str(source), "preset": str(preset)}
    )


def load_raw_config(path: Optional[str]) -> Dict[str, Any]:
    """JSON da configuração; `{}` sem arquivo."""
    if not path:
        return {}
    source = _resolve_config_path(path)
    try:
        raw = json.loads(source.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigParseError(
            f"JSON malformado em {source}: linha {e.lineno}, coluna {e.colno}",
            details={"path": str(source), "reason": e.msg}
        )
    if not isinstance(raw, dict):
        raise ConfigParseError(f"Configuração deve ser um objeto JSON: {source}")
    return raw


def parse_override(text: str) -> Tuple[list, Any]:
    """'a.b.c=valor' → (['a', 'b', 'c'], valor); valor é literal JSON ou string."""
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise ConfigParseError(f"Override inválido '{text}': use chave=valor", details={"override": text})
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = value
    return key.strip().split("."), parsed


def apply_overrides(raw: Dict[str, Any], overrides: Iterable[str]) -> Dict[str, Any]:
    """Aplica overrides sobre uma cópia profunda de `raw`."""
    result = json.loads(json.dumps(raw))
    for text in overrides or []:
        path, value = parse_override(text)
        node = result
        for i, part in enumerate(path[:-1]):
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigParseError(
                    f"Chave '{'.'.join(path[:i + 1])}' não é um objeto",
                    details={"key": ".".join(path)}
                )
            node = child
        node[path[-1]] = value
        logger.debug(f"Override {'.'.join(path)} = {value!r}")
    return result


def build_config(raw: Dict[str, Any]) -> RunConfig:
    """
    Valida o RunConfig.

    Raises:
        ConfigParseError: chave desconhecida, ausente ou de tipo errado
        ConfigError: valor fora das regras (grade, limites)
    """
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        errors = e.errors()
        parse_errors = [err for err in errors if _is_parse_error(err["type"])]
        details = {"errors": [{"key": _loc(err), "message": err["msg"]} for err in errors]}
        if parse_errors:
            first = parse_errors[0]
            raise ConfigParseError(f"Chave '{_loc(first)}': {first['msg']}", details=details)
        first = errors[0]
        key = _loc(first) or "config"
        raise ConfigError(f"Configuração inválida em '{key}': {first['msg']}", details=details)


def resolve_config(path: Optional[str], overrides: Iterable[str] = ()) -> RunConfig:
    return build_config(apply_overrides(load_raw_config(path), overrides))


def resolve_design_config(path: Optional[str], overrides: Iterable[str] = ()) -> RunConfig:
    """Aceita um RunConfig completo ou um DesignSpec isolado."""
    raw = load_raw_config(path)
    if raw and "design" not in raw and "n_nl" in raw:
        raw = {"design": raw}
    return build_config(apply_overrides(raw, overrides))


def resolve_out_dir(out: Optional[str], config: RunConfig) -> Path:
    target = Path(out or config.output_dir or settings.OUTPUT_DIR)
    try:
        target.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError(f"Não foi possível criar {target}", details={"reason": str(e)})
    return target


# ==================== SERVICES ====================

@dataclass
class Services:
    dispersion: DispersionService
    superlattice: SuperlatticeService
    interference: InterferenceService
    instrument: InstrumentService
    analysis: AnalysisService
    rendering: RenderingService
    plotting: PlottingService


def build_services(config: RunConfig) -> Services:
    """Services ligados ao DispersionModel da execução."""
    dispersion = DispersionService(model=config.dispersion)
    superlattice = SuperlatticeService(dispersion=dispersion)
    return Services(
        dispersion=dispersion,
        superlattice=superlattice,
        interference=InterferenceService(dispersion=dispersion, superlattice=superlattice),
        instrument=InstrumentService(),
        analysis=AnalysisService(),
        rendering=rendering_service,
        plotting=plotting_service,
    )


def build_pipeline(config: RunConfig, threads: Optional[int] = None) -> SimulationPipeline:
    services = build_services(config)
    return SimulationPipeline(
        config=config,
        interference_service=services.interference,
        instrument_service=services.instrument,
        analysis_service=services.analysis,
        rendering_service=services.rendering,
        threads=threads or settings.DEFAULT_THREADS,
    )
