"""

Factorization results and the uncovered-cell bookkeeping shared by the greedy algorithms.

"""

from typing import List, Optional, Tuple

from bitarray import bitarray, frozenbitarray
from bitarray.util import count_and, subset

from .. import exception
from ..util import Bits
from ..boolmat import BooleanMatrix, FactorSet, bool_product, factors_to_matrices


__all__ = [
    "FactorizationResult",
    "Residual",

    "check_epsilon",
    "check_max_factors",
    "intent_within",
]


class FactorizationResult:
    """
    Output of a factorization algorithm.

    Concept-based algorithms fill in factors; A and B are then derived from them.
    Algorithms producing general factors (Asso) pass A and B directly.
    """

    __slots__ = (
        "algorithm",
        "factors",
        "per_step",
        "residual_uncovered",
        "residual_overcovered",
        "elapsed",
        "_a",
        "_b",
    )

    def __init__(self,
                 algorithm: str,
                 per_step: List[Tuple[int, int]],
                 residual_uncovered: int,
                 residual_overcovered: int,
                 factors: Optional[FactorSet] = None,
                 a: Optional[BooleanMatrix] = None,
                 b: Optional[BooleanMatrix] = None,
                 elapsed: float = 0.0) -> None:
        if factors is None and (a is None or b is None):
            raise ValueError("Expected either factors or both A and B.")
        self.algorithm = str(algorithm)
        self.factors = factors
        # (E_u, E_o) after each factor.
        self.per_step = list(per_step)
        self.residual_uncovered = int(residual_uncovered)
        self.residual_overcovered = int(residual_overcovered)
        self.elapsed = float(elapsed)
        self._a = a
        self._b = b

    def __repr__(self) -> str:
        return "<{} {} k={} E_u={} E_o={}>".format(
            self.__class__.__name__, self.algorithm, self.k, self.residual_uncovered, self.residual_overcovered)

    @property
    def k(self) -> int:
        if self.factors is not None:
            return len(self.factors)
        assert self._a is not None
        return self._a.n_cols

    @property
    def a(self) -> BooleanMatrix:
        if self._a is None:
            assert self.factors is not None
            self._a, self._b = factors_to_matrices(self.factors)
        return self._a

    @property
    def b(self) -> BooleanMatrix:
        if self._b is None:
            assert self.factors is not None
            self._a, self._b = factors_to_matrices(self.factors)
        return self._b

    @property
    def is_exact(self) -> bool:
        return self.residual_uncovered == 0 and self.residual_overcovered == 0

    def product(self) -> BooleanMatrix:
        if self.factors is not None:
            return self.factors.product()
        return bool_product(self.a, self.b)

    def steps_to_csv(self) -> str:
        lines = ["step,e_u,e_o"]
        for step, (e_u, e_o) in enumerate(self.per_step, start=1):
            lines.append("{},{},{}".format(step, e_u, e_o))
        return "".join(line + "\n" for line in lines)


class Residual:
    """ Set U of still uncovered cells, kept as one bitarray per column. """

    __slots__ = ("cols", "count")

    def __init__(self, matrix: BooleanMatrix) -> None:
        self.cols = [bitarray(col) for col in matrix.cols]
        self.count = sum(col.count() for col in self.cols)

    def score(self, extent: Bits, intent: Bits) -> int:
        """ |extent x intent  intersected with U| """
        cols = self.cols
        return sum(count_and(cols[j], extent) for j in intent.itersearch(1))

    def remove(self, extent: Bits, intent: Bits) -> int:
        """ Mark the rectangle extent x intent as covered. Returns the number of newly covered cells. """
        cols = self.cols
        removed = 0
        kept = ~extent
        for j in intent.itersearch(1):
            hit = count_and(cols[j], extent)
            if hit:
                removed += hit
                cols[j] &= kept
        self.count -= removed
        return removed


def intent_within(matrix: BooleanMatrix, extent: Bits, cols: Bits) -> Bits:
    """ extent^up restricted to cols, iterating over whichever of rows / columns is smaller. """
    if extent.count() <= cols.count():
        res = cols
        matrix_rows = matrix.rows
        for i in extent.itersearch(1):
            res = res & matrix_rows[i]
            if not res.any():
                break
        return res
    within = bitarray(cols)
    matrix_cols = matrix.cols
    for j in cols.itersearch(1):
        if not subset(extent, matrix_cols[j]):
            within[j] = 0
    return frozenbitarray(within)


def check_epsilon(epsilon: int) -> None:
    if epsilon < 0:
        raise exception.InvalidParameter("epsilon must not be negative, got {}.".format(epsilon))


def check_max_factors(max_factors: Optional[int]) -> None:
    if max_factors is not None and max_factors < 0:
        raise exception.InvalidParameter("max_factors must not be negative, got {}.".format(max_factors))
