"""

Essential part E(I) of a Boolean matrix, the concept space B_E(I) and exact Boolean rank oracles.

A cell (i, j) with I_ij = 1 is essential when its interval I_ij of concepts covering it is
minimal w.r.t. inclusion. Covering the essential cells by formal concepts of I covers all of I.

Only the 0-essential part is implemented. Essential parts for a positive error budget
would be computed from the same strict row / column containment relations.

"""

from typing import Dict, List, Optional
import time

from bitarray import bitarray, frozenbitarray
from bitarray.util import any_and, zeros as bazeros

from . import exception
from . import util
from .util import Bits
from .logger import logger
from .boolmat import BooleanMatrix, FactorSet, bool_product, contained, hamming_norm
from .galois import FormalConcept, down_bits, enumerate_concepts, is_concept_bits, up_bits


__all__ = [
    "EssentialReport",

    "strict_subset_unions",
    "compute_essential",
    "essential_report",
    "in_B_E",
    "essential_concepts",
    "lift_to_concepts",
    "minimum_factor_set",
    "boolean_rank_oracle",
]


class EssentialReport:
    """ E(I) together with its 1-counts. """

    __slots__ = ("essential", "ones_I", "ones_E", "ratio", "is_zero")

    def __init__(self, essential: BooleanMatrix, ones_i: int, ones_e: int) -> None:
        self.essential = essential
        self.ones_I = ones_i
        self.ones_E = ones_e
        # The ratio of an all-zero matrix is reported as 1 and flagged.
        self.is_zero = ones_i == 0
        self.ratio = 1.0 if self.is_zero else ones_e / ones_i

    def __repr__(self) -> str:
        return "<{} ones_I={} ones_E={} ratio={:.4f}{}>".format(
            self.__class__.__name__, self.ones_I, self.ones_E, self.ratio, " zero" if self.is_zero else "")

    def to_line(self) -> str:
        return "ones_I={}, ones_E={}, ratio={:.4f}".format(self.ones_I, self.ones_E, self.ratio)


def strict_subset_unions(vectors: List[Bits]) -> List[Bits]:
    """
    For every bitset v, the union of all bitsets in vectors that are strict subsets of v.

    All vectors have the same length. Candidates are visited in order of increasing size,
    since a strict subset has fewer bits than its superset.
    """
    sizes = [v.count() for v in vectors]
    order = sorted(range(len(vectors)), key=lambda p: sizes[p])
    res = {}    # type: Dict[int, Bits]
    for p in order:
        v = vectors[p]
        size = sizes[p]
        acc = bazeros(len(v))
        for q in order:
            if sizes[q] >= size:
                break
            w = vectors[q]
            if util.is_subset(w, v):
                acc |= w
        res[p] = frozenbitarray(acc)
    return [res[p] for p in range(len(vectors))]


def compute_essential(matrix: BooleanMatrix) -> BooleanMatrix:
    """
    E(I): I_ij = 1, no row strictly contained in row i has a 1 in column j, and no column
    strictly contained in column j has a 1 in row i.

    Non-clarified input is accepted; duplicates are not strict containments.
    """
    row_forbidden = strict_subset_unions(list(matrix.rows))
    col_forbidden = strict_subset_unions(list(matrix.cols))
    rows = [bitarray(row & ~forbidden) for row, forbidden in zip(matrix.rows, row_forbidden)]
    for j, forbidden in enumerate(col_forbidden):
        for i in forbidden.itersearch(1):
            rows[i][j] = 0
    return BooleanMatrix(matrix.n_rows, matrix.n_cols, rows)


def essential_report(matrix: BooleanMatrix) -> EssentialReport:
    start_time = time.perf_counter()
    essential = compute_essential(matrix)
    res = EssentialReport(essential, hamming_norm(matrix), hamming_norm(essential))
    logger.debug("Computed essential part of a {}x{} matrix in {:.02f} s. {}".format(
        matrix.n_rows, matrix.n_cols, time.perf_counter() - start_time, res.to_line()))
    return res


def in_B_E(matrix: BooleanMatrix, concept: FormalConcept, essential: Optional[BooleanMatrix] = None) -> bool:
    """ Check whether a concept belongs to a minimal interval, i.e. covers an essential cell. """
    if not is_concept_bits(matrix, concept.extent_bits, concept.intent_bits):
        raise exception.NotAConcept("{} is not a formal concept of the matrix.".format(concept))
    if essential is None:
        essential = compute_essential(matrix)
    essential_rows = essential.rows
    intent = concept.intent_bits
    return any(any_and(essential_rows[i], intent) for i in concept.extent_bits.itersearch(1))


def essential_concepts(matrix: BooleanMatrix, max_concepts: Optional[int] = None) -> List[FormalConcept]:
    """ The concepts of B_E(I), the union of the minimal intervals, in lectic order. """
    essential = compute_essential(matrix)
    return [c for c in enumerate_concepts(matrix, max_concepts) if in_B_E(matrix, c, essential)]


def lift_to_concepts(matrix: BooleanMatrix, a: BooleanMatrix, b: BooleanMatrix) -> FactorSet:
    """
    Replace every factor of a from-below factorization A o B by the concept
    <C^up^down, C^up> generated by its column of A.

    The lifted factors cover at least what the original ones did and stay below I.
    """
    product = bool_product(a, b)
    if product.shape != matrix.shape:
        raise exception.DimensionMismatch("Product is {}x{}, matrix is {}x{}.".format(*product.shape, *matrix.shape))
    if not contained(product, matrix):
        raise exception.NotFromBelow("A o B covers a 0 of the matrix.")
    concepts = []
    seen = set()
    for p in range(a.n_cols):
        intent = up_bits(matrix, a.cols[p])
        concept = FormalConcept(down_bits(matrix, intent), intent)
        if concept not in seen:
            seen.add(concept)
            concepts.append(concept)
    return FactorSet(concepts, matrix.n_rows, matrix.n_cols)


def _cell_mask(concept: FormalConcept, n_rows: int, n_cols: int) -> Bits:
    """ Row-major flattening of the rectangle extent x intent. """
    mask = bazeros(n_rows * n_cols)
    for i in concept.extent_bits.itersearch(1):
        mask[i * n_cols:(i + 1) * n_cols] = concept.intent_bits
    return frozenbitarray(mask)


def _search_cover(uncovered: Bits, budget: int, covering: Dict[int, List[int]], masks: List[Bits],
                  chosen: List[int]) -> bool:
    if not uncovered.any():
        return True
    if not budget:
        return False
    # Every cover must cover the lowest uncovered cell.
    cell = uncovered.index(1)
    for p in covering[cell]:
        chosen.append(p)
        if _search_cover(uncovered & ~masks[p], budget - 1, covering, masks, chosen):
            return True
        chosen.pop()
    return False


def minimum_factor_set(
        matrix: BooleanMatrix,
        restrict_to_B_E: bool = False,
        max_concepts: Optional[int] = None) -> List[FormalConcept]:
    """
    A smallest set of formal concepts whose rectangles cover the matrix exactly.

    Exhaustive search by increasing size, intended for small matrices only. The candidate
    concepts are B(I), or B_E(I) when restrict_to_B_E is set; ConceptLimitExceeded is raised
    when B(I) has more than max_concepts concepts (default from PYGREESS_RANK_MAX_CONCEPTS).
    """
    if max_concepts is None:
        max_concepts = util.get_rank_max_concepts()
    concepts = enumerate_concepts(matrix, max_concepts)
    if restrict_to_B_E:
        essential = compute_essential(matrix)
        concepts = [c for c in concepts if in_B_E(matrix, c, essential)]
    concepts = [c for c in concepts if c.area]

    flat = bitarray()
    for row in matrix.rows:
        flat.extend(row)
    target = frozenbitarray(flat)
    masks = [_cell_mask(c, matrix.n_rows, matrix.n_cols) for c in concepts]
    covering = {}   # type: Dict[int, List[int]]
    for cell in target.itersearch(1):
        covering[cell] = [p for p, mask in enumerate(masks) if mask[cell]]

    for budget in range(len(concepts) + 1):
        chosen = []     # type: List[int]
        if _search_cover(target, budget, covering, masks, chosen):
            return [concepts[p] for p in chosen]
    raise exception.PyGreessException("No exact cover by the candidate concepts.")


def boolean_rank_oracle(
        matrix: BooleanMatrix,
        restrict_to_B_E: bool = False,
        max_concepts: Optional[int] = None) -> int:
    """ Boolean (Schein) rank by exhaustive search; see minimum_factor_set(). """
    return len(minimum_factor_set(matrix, restrict_to_B_E, max_concepts))
