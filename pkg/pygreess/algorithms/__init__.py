"""

Boolean matrix factorization algorithms.

"""

from typing import Optional

from .. import exception
from ..boolmat import BooleanMatrix
from .base import FactorizationResult, Residual
from .greess import IntervalSeedSet, compute_intervals, greess
from .grecond import grecond
from .grecon import grecon
from .asso import DEFAULT_TAU, DEFAULT_W_MINUS, DEFAULT_W_PLUS, association_matrix, asso


__all__ = [
    "ALGORITHMS",
    "FROM_BELOW_ALGORITHMS",
    "FactorizationResult",
    "IntervalSeedSet",
    "Residual",

    "compute_intervals",
    "greess",
    "grecond",
    "grecon",
    "asso",
    "association_matrix",
    "factorize",
]


ALGORITHMS = ("greess", "grecond", "grecon", "asso")
FROM_BELOW_ALGORITHMS = ("greess", "grecond", "grecon")


def factorize(
        name: str,
        matrix: BooleanMatrix,
        epsilon: int = 0,
        max_factors: Optional[int] = None,
        tau: float = DEFAULT_TAU,
        w_plus: float = DEFAULT_W_PLUS,
        w_minus: float = DEFAULT_W_MINUS,
        max_concepts: Optional[int] = None) -> FactorizationResult:
    """ Run the named algorithm. Asso needs max_factors and ignores epsilon. """
    if name == "greess":
        return greess(matrix, epsilon, max_factors)
    if name == "grecond":
        return grecond(matrix, epsilon, max_factors)
    if name == "grecon":
        return grecon(matrix, epsilon, max_factors, max_concepts)
    if name == "asso":
        if max_factors is None:
            raise exception.InvalidParameter("Asso requires the number of factors.")
        return asso(matrix, max_factors, tau, w_plus, w_minus)
    raise exception.InvalidParameter("Unknown algorithm '{}'. Expected one of: {}.".format(
        name, ", ".join(ALGORITHMS)))
