"""
Avaliação paralela determinística de grades.

Contrato:
- a grade é dividida em blocos de tamanho FIXO (GRID_CHUNK_SIZE), independente
  do número de threads;
- cada bloco é avaliado isoladamente e escrito no seu slot pré-alocado;
- nenhum acúmulo compartilhado.

Assim o resultado é bit a bit idêntico para qualquer número de threads.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

import numpy as np

from app.core.config import settings

logger = logging.getLogger(__name__)


def chunk_slices(n_points: int, chunk_size: Optional[int] = None) -> List[slice]:
    """Particiona [0, n_points) em slices consecutivos de tamanho fixo."""
    size = chunk_size or settings.GRID_CHUNK_SIZE
    return [slice(start, min(start + size, n_points)) for start in range(0, n_points, size)]


def evaluate_chunked(
    fn: Callable[[slice], np.ndarray],
    out: np.ndarray,
    threads: int = 1,
    chunk_size: Optional[int] = None
) -> np.ndarray:
    """
    Preenche `out` (ao longo do primeiro eixo) chamando `fn(slice)` por bloco.

    `fn` deve ser pura: depende apenas do slice recebido.
    """
    slices = chunk_slices(out.shape[0], chunk_size)

    def _run(sl: slice) -> None:
        out[sl] = fn(sl)

    if threads <= 1 or len(slices) <= 1:
        for sl in slices:
            _run(sl)
        return out

    logger.debug(f"Avaliando {len(slices)} blocos com {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # list() propaga a primeira exceção de qualquer bloco
        list(pool.map(_run, slices))
    return out


def map_ordered(fn: Callable, items: list, threads: int = 1) -> list:
    """map() com resultados na ordem de entrada, opcionalmente em threads."""
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
