"""

GreConD: greedy concept search "on demand".

Factors are built attribute by attribute directly in I, without enumerating the concept lattice.

"""

from typing import Optional
import time

from .. import exception
from ..logger import logger_algorithm
from ..boolmat import BooleanMatrix, FactorSet
from ..galois import FormalConcept
from .base import FactorizationResult, Residual, check_epsilon, check_max_factors, intent_within


__all__ = [
    "grecond",
]


def _best_concept(matrix: BooleanMatrix, residual: Residual):
    matrix_cols = matrix.cols
    all_cols = matrix.all_cols
    extent = matrix.all_rows
    intent = matrix.no_cols
    score = 0
    while True:
        best = None
        best_score = score
        for j in range(matrix.n_cols):
            if intent[j]:
                continue
            cand_extent = extent & matrix_cols[j]
            cand_intent = intent_within(matrix, cand_extent, all_cols)
            cand_score = residual.score(cand_extent, cand_intent)
            if cand_score > best_score:
                best = (cand_extent, cand_intent)
                best_score = cand_score
        if best is None:
            break
        extent, intent = best
        score = best_score
    return extent, intent, score


def grecond(matrix: BooleanMatrix, epsilon: int = 0, max_factors: Optional[int] = None) -> FactorizationResult:
    """
    Factorize I from below until at most epsilon 1s stay uncovered or max_factors factors are found.
    """
    check_epsilon(epsilon)
    check_max_factors(max_factors)
    start_time = time.perf_counter()

    residual = Residual(matrix)
    factors = []
    per_step = []
    while residual.count > epsilon:
        if max_factors is not None and len(factors) >= max_factors:
            break
        extent, intent, score = _best_concept(matrix, residual)
        if not score:
            raise exception.FactorizationStalled(
                "No concept covers any of the {} uncovered cells.".format(residual.count))
        factors.append(FormalConcept(extent, intent))
        residual.remove(extent, intent)
        per_step.append((residual.count, 0))
        logger_algorithm.debug("GreConD factor {}: {}x{} covers {}, {} uncovered.".format(
            len(factors), extent.count(), intent.count(), score, residual.count))

    elapsed = time.perf_counter() - start_time
    logger_algorithm.info("GreConD: {} factors, {} uncovered in {:.02f} s.".format(
        len(factors), residual.count, elapsed))
    return FactorizationResult(
        "grecond", per_step, residual.count, 0,
        factors=FactorSet(factors, matrix.n_rows, matrix.n_cols), elapsed=elapsed)
