"""

GreCon: greedy set cover over the whole concept lattice B(I).

Maximal tiles of I are its formal concepts, so this is the tiling baseline. The lattice
is enumerated up front and may be exponential; the enumeration is capped.

"""

from typing import List, Optional, Tuple
import heapq
import time

from .. import exception
from .. import util
from ..logger import logger_algorithm
from ..boolmat import BooleanMatrix, FactorSet
from ..galois import enumerate_concepts
from .base import FactorizationResult, Residual, check_epsilon, check_max_factors


__all__ = [
    "grecon",
]


def grecon(
        matrix: BooleanMatrix,
        epsilon: int = 0,
        max_factors: Optional[int] = None,
        max_concepts: Optional[int] = None) -> FactorizationResult:
    """
    Repeatedly pick the concept covering the most uncovered cells until at most epsilon remain.

    Raises ConceptLimitExceeded when B(I) has more than max_concepts concepts
    (default from PYGREESS_MAX_CONCEPTS). Ties go to the concept first in lectic order.
    """
    check_epsilon(epsilon)
    check_max_factors(max_factors)
    if max_concepts is None:
        max_concepts = util.get_max_concepts()
    start_time = time.perf_counter()

    concepts = [c for c in enumerate_concepts(matrix, max_concepts) if c.area]
    logger_algorithm.debug("GreCon: {} nonempty concepts.".format(len(concepts)))
    residual = Residual(matrix)
    # Lazy greedy: stored scores are upper bounds, since scores only drop as U shrinks.
    heap = [(-c.area, p) for p, c in enumerate(concepts)]     # type: List[Tuple[int, int]]
    heapq.heapify(heap)

    factors = []
    per_step = []
    while residual.count > epsilon:
        if max_factors is not None and len(factors) >= max_factors:
            break
        chosen = None
        while heap:
            bound, p = heapq.heappop(heap)
            concept = concepts[p]
            score = residual.score(concept.extent_bits, concept.intent_bits)
            if score == -bound:
                chosen = concept
                break
            if score:
                heapq.heappush(heap, (-score, p))
        if chosen is None:
            raise exception.FactorizationStalled(
                "No concept covers any of the {} uncovered cells.".format(residual.count))
        factors.append(chosen)
        residual.remove(chosen.extent_bits, chosen.intent_bits)
        per_step.append((residual.count, 0))
        logger_algorithm.debug("GreCon factor {}: covers {}, {} uncovered.".format(
            len(factors), score, residual.count))

    elapsed = time.perf_counter() - start_time
    logger_algorithm.info("GreCon: {} factors from {} concepts, {} uncovered in {:.02f} s.".format(
        len(factors), len(concepts), residual.count, elapsed))
    return FactorizationResult(
        "grecon", per_step, residual.count, 0,
        factors=FactorSet(factors, matrix.n_rows, matrix.n_cols), elapsed=elapsed)
