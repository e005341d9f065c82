"""

GreEss: greedy from-below factorization driven by the essential part E(I).

ComputeIntervals groups the essential cells into concepts <C, D> of E(I) (the seeds).
Picking any one concept of I from every interval I_{C,D} gives an exact factorization,
so GreEss greedily picks, round by round, the concept from the remaining intervals that
covers the most still uncovered cells.

"""

from typing import Dict, Iterator, List, Optional, Tuple
import time

from .. import exception
from ..util import Bits
from ..logger import logger_algorithm
from ..boolmat import BooleanMatrix, FactorSet
from ..galois import FormalConcept, closure_cols_bits, closure_rows_bits, down_bits, up_bits
from ..essential import compute_essential
from .base import FactorizationResult, Residual, check_epsilon, check_max_factors, intent_within


__all__ = [
    "IntervalSeedSet",

    "compute_intervals",
    "greess",
]


class IntervalSeedSet:
    """ Seeds <C, D> - formal concepts of E(I) - in discovery order. """

    __slots__ = ("seeds", "essential")

    def __init__(self, seeds: List[FormalConcept], essential: BooleanMatrix) -> None:
        self.seeds = list(seeds)
        self.essential = essential

    def __repr__(self) -> str:
        return "<{} seeds={}>".format(self.__class__.__name__, len(self.seeds))

    def __len__(self) -> int:
        return len(self.seeds)

    def __iter__(self) -> Iterator[FormalConcept]:
        return iter(self.seeds)

    @staticmethod
    def lifted_rectangle(matrix: BooleanMatrix, seed: FormalConcept) -> Tuple[Bits, Bits]:
        """ C^up^down x D^down^up in I: the cells covered by every concept of I_{C,D}. """
        return closure_rows_bits(matrix, seed.extent_bits), closure_cols_bits(matrix, seed.intent_bits)


class _Closures:
    """ Memoized closures in I of extents and intents found in E(I). """

    def __init__(self, matrix: BooleanMatrix) -> None:
        self.matrix = matrix
        self.rows = {}    # type: Dict[Bits, Bits]
        self.cols = {}    # type: Dict[Bits, Bits]

    def close_rows(self, rows: Bits) -> Bits:
        res = self.rows.get(rows)
        if res is None:
            res = self.rows[rows] = closure_rows_bits(self.matrix, rows)
        return res

    def close_cols(self, cols: Bits) -> Bits:
        res = self.cols.get(cols)
        if res is None:
            res = self.cols[cols] = closure_cols_bits(self.matrix, cols)
        return res


def compute_intervals(matrix: BooleanMatrix, essential: Optional[BooleanMatrix] = None) -> IntervalSeedSet:
    """
    Greedily group the essential cells of I into concepts of E(I).

    Each seed is grown attribute by attribute in E(I), scoring a candidate by the number
    of still uncovered essential cells in its rectangle lifted to I. Stops when every
    essential cell lies in the lifted rectangle of some seed.
    """
    if essential is None:
        essential = compute_essential(matrix)
    e_cols = essential.cols
    residual = Residual(essential)
    closures = _Closures(matrix)
    seeds = []

    while residual.count:
        extent = essential.all_rows
        intent = essential.no_cols
        score = 0
        while True:
            best = None
            best_score = score
            for j in range(essential.n_cols):
                if intent[j]:
                    continue
                # (D + {j})^down and (D + {j})^down^up in E(I).
                cand_extent = extent & e_cols[j]
                cand_intent = up_bits(essential, cand_extent)
                cand_score = residual.score(closures.close_rows(cand_extent), closures.close_cols(cand_intent))
                if cand_score > best_score:
                    best = (cand_extent, cand_intent)
                    best_score = cand_score
            if best is None:
                break
            extent, intent = best
            score = best_score
        if not score:
            raise exception.FactorizationStalled(
                "No seed covers any of the {} remaining essential cells.".format(residual.count))
        seeds.append(FormalConcept(extent, intent))
        residual.remove(closures.close_rows(extent), closures.close_cols(intent))
        logger_algorithm.debug("Seed {}: extent={} intent={} covers {} essential cells.".format(
            len(seeds), extent.count(), intent.count(), score))

    return IntervalSeedSet(seeds, essential)


def _search_interval(matrix: BooleanMatrix, residual: Residual, rows: Bits, cols: Bits) -> Tuple[Bits, Bits, int]:
    """
    Greedy attribute extension inside the context J = I restricted to rows x cols.

    Every concept of J is a concept of I in the seed's interval.
    """
    matrix_cols = matrix.cols
    extent = rows
    intent = matrix.no_cols
    score = 0
    while True:
        best = None
        best_score = score
        for j in (cols & ~intent).itersearch(1):
            # Both computed from the current intent F: (F + {j})^down_J and (F + {j})^down_J^up_J.
            cand_extent = extent & matrix_cols[j]
            cand_intent = intent_within(matrix, cand_extent, cols)
            cand_score = residual.score(cand_extent, cand_intent)
            if cand_score > best_score:
                best = (cand_extent, cand_intent)
                best_score = cand_score
        if best is None:
            break
        extent, intent = best
        score = best_score
    return extent, intent, score


def greess(
        matrix: BooleanMatrix,
        epsilon: int = 0,
        max_factors: Optional[int] = None,
        seeds: Optional[IntervalSeedSet] = None) -> FactorizationResult:
    """
    Factorize I from below until at most epsilon 1s stay uncovered.

    Every factor is a formal concept of I taken from a distinct interval I_{C,D} of the
    seeds. With epsilon = 0 and no max_factors the factorization is exact.
    """
    check_epsilon(epsilon)
    check_max_factors(max_factors)
    start_time = time.perf_counter()
    if seeds is None:
        seeds = compute_intervals(matrix)

    # Search spaces of the intervals: rows D^down and columns C^up.
    remaining = [(seed, down_bits(matrix, seed.intent_bits), up_bits(matrix, seed.extent_bits))
                 for seed in seeds]
    residual = Residual(matrix)
    factors = []
    per_step = []
    while residual.count > epsilon:
        if max_factors is not None and len(factors) >= max_factors:
            break
        best = None
        best_score = 0
        for index, (seed, rows, cols) in enumerate(remaining):
            # The whole interval search space bounds the score.
            if residual.score(rows, cols) <= best_score:
                continue
            extent, intent, score = _search_interval(matrix, residual, rows, cols)
            if score > best_score:
                best = (index, extent, intent)
                best_score = score
        if best is None:
            raise exception.FactorizationStalled(
                "No interval covers any of the {} uncovered cells ({} intervals left).".format(
                    residual.count, len(remaining)))
        index, extent, intent = best
        del remaining[index]
        factors.append(FormalConcept(extent, intent))
        residual.remove(extent, intent)
        per_step.append((residual.count, 0))
        logger_algorithm.debug("GreEss factor {}: {}x{} covers {}, {} uncovered.".format(
            len(factors), extent.count(), intent.count(), best_score, residual.count))

    elapsed = time.perf_counter() - start_time
    logger_algorithm.info("GreEss: {} factors from {} seeds, {} uncovered in {:.02f} s.".format(
        len(factors), len(seeds), residual.count, elapsed))
    return FactorizationResult(
        "greess", per_step, residual.count, 0,
        factors=FactorSet(factors, matrix.n_rows, matrix.n_cols), elapsed=elapsed)
