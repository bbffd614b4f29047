"""
Configurações do Simulador de Superredes
========================================

Variáveis de ambiente e configurações globais do processo.

A configuração de cada execução (design, grades, instrumento) vive no
RunConfig em JSON (ver app/schemas/run_config.py); aqui ficam apenas os
parâmetros do processo: logging, paralelismo e diretórios.
"""

from typing import List
from pydantic_settings import BaseSettings
from pydantic import field_validator
from functools import lru_cache


class Settings(BaseSettings):
    """Configurações da aplicação."""

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s %(levelname)s [%(name)s] %(message)s"

    # Paralelismo
    DEFAULT_THREADS: int = 1
    GRID_CHUNK_SIZE: int = 512  # pontos de λ por bloco; fixo para saída determinística

    # Diretórios
    OUTPUT_DIR: str = "out"
    DESIGNS_DIR: str = "designs"  # presets resolvidos por nome: --config 1

    # Artefatos - 9 algarismos significativos
    CSV_FLOAT_FORMAT: str = "%.9g"

    # Tipos de gráfico aceitos pelo comando plot
    PLOT_FORMATS: List[str] = ["png", "pdf", "svg"]

    @field_validator("PLOT_FORMATS", mode="before")
    @classmethod
    def parse_plot_formats(cls, v):
        """Parse PLOT_FORMATS de string ou lista."""
        if isinstance(v, str):
            # String separada por vírgula
            return [fmt.strip().lower() for fmt in v.split(",") if fmt.strip()]
        return v

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        return v.upper() if isinstance(v, str) else v

    class Config:
        env_file = ".env"
        case_sensitive = True


@lru_cache()
def get_settings() -> Settings:
    """Retorna settings cacheadas."""
    return Settings()


settings = get_settings()


def validate_settings(current: Settings = settings) -> bool:
    """
    Valida invariantes das configurações do processo.
    Lança exceção se alguma regra foi violada.
    """
    errors = []

    if current.DEFAULT_THREADS < 1:
        errors.append("DEFAULT_THREADS deve ser >= 1")

    if current.GRID_CHUNK_SIZE < 1:
        errors.append("GRID_CHUNK_SIZE deve ser >= 1")

    if current.LOG_LEVEL not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        errors.append(f"LOG_LEVEL inválido: {current.LOG_LEVEL}")

    if errors:
        raise ValueError(
            "Configurações inválidas:\n" +
            "\n".join(f"  - {e}" for e in errors)
        )

    return True


# Executar validação ao importar
validate_settings()
