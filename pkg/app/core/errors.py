"""
Erros de Domínio do Simulador
=============================

Hierarquia de exceções usada por todos os services.

Toda exceção carrega um `error_type` estável (usado no JSON de erro do CLI),
uma mensagem legível e um dicionário de detalhes.
"""

from typing import Optional, Any, Dict


class SimulationError(Exception):
    """
    Erro base do simulador.

    Subclasses indicam a categoria; o CLI converte qualquer SimulationError
    em código de saída diferente de zero e JSON em stderr.
    """

    error_type: str = "SIMULATION_ERROR"
    exit_code: int = 1

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        error_type: Optional[str] = None
    ):
        self.message = message
        self.details = details or {}
        if error_type:
            self.error_type = error_type
        super().__init__(f"[{self.error_type}] {message}")

    def to_dict(self) -> Dict[str, Any]:
        """Representação serializável para stderr."""
        return {
            "error": self.error_type,
            "message": self.message,
            "details": self.details,
        }


class InvalidInputError(SimulationError):
    """Entrada fisicamente ou numericamente inválida (λ <= 0, grade fora da faixa...)."""

    error_type = "INVALID_INPUT"


class InsufficientDataError(SimulationError):
    """Poucos pontos ou picos para a estatística pedida."""

    error_type = "INSUFFICIENT_DATA"


class FitFailureError(SimulationError):
    """
    Ajuste não convergiu.

    O resíduo RMS da última iteração fica disponível para diagnóstico.
    """

    error_type = "FIT_FAILURE"

    def __init__(self, message: str, residual_rms: float, details: Optional[dict] = None):
        self.residual_rms = residual_rms
        merged = {"residual_rms": residual_rms}
        merged.update(details or {})
        super().__init__(message, merged)


class UndefinedCorrelationError(SimulationError):
    """Correlação de Pearson indefinida (variância nula)."""

    error_type = "UNDEFINED_CORRELATION"


class ConfigError(SimulationError):
    """Configuração válida sintaticamente mas inconsistente."""

    error_type = "CONFIG_ERROR"


class ConfigParseError(SimulationError):
    """JSON malformado ou chave com tipo errado."""

    error_type = "PARSE_ERROR"
    exit_code = 2


class OutOfRangeWarning(UserWarning):
    """Comprimento de onda fora da faixa de validade do modelo de Sellmeier."""
