"""

Asso: discrete basis problem solver using pairwise association confidences.

Candidate basis vectors are the rows of the thresholded association matrix. Every step
picks the candidate (and its usage column) with the largest weighted cover gain.
Overcovering 0s is allowed, so the factorization is generally not from below.

"""

from typing import List, Tuple
import time

import numpy as np

from .. import exception
from ..logger import logger_algorithm
from ..boolmat import BooleanMatrix, error_split
from .base import FactorizationResult


__all__ = [
    "DEFAULT_TAU",
    "DEFAULT_W_PLUS",
    "DEFAULT_W_MINUS",

    "association_matrix",
    "asso",
]


DEFAULT_TAU = 0.85
DEFAULT_W_PLUS = 1.0
DEFAULT_W_MINUS = 1.0


def association_matrix(data: np.ndarray, tau: float) -> np.ndarray:
    """
    m x m Boolean matrix whose row j marks the columns j' with conf({j} => {j'}) >= tau.

    Rows of empty columns are all-zero.
    """
    counts = data.astype(np.int64)
    co = counts.T @ counts
    support = np.diag(co).astype(np.float64)
    conf = np.zeros(co.shape, dtype=np.float64)
    nonempty = support > 0
    conf[nonempty] = co[nonempty] / support[nonempty, np.newaxis]
    return conf >= tau


def _gains(positive: np.ndarray, negative: np.ndarray, basis: np.ndarray,
           w_plus: float, w_minus: float) -> np.ndarray:
    """ Per-row, per-candidate cover gain: w+ * newly covered 1s - w- * newly covered 0s. """
    weights = basis.T.astype(np.float64)
    return w_plus * (positive @ weights) - w_minus * (negative @ weights)


def asso(
        matrix: BooleanMatrix,
        k: int,
        tau: float = DEFAULT_TAU,
        w_plus: float = DEFAULT_W_PLUS,
        w_minus: float = DEFAULT_W_MINUS) -> FactorizationResult:
    """
    Find at most k basis vectors (rows of B) and their usage (columns of A).

    An object uses a basis vector iff its marginal gain is positive. The search stops
    before k factors when no remaining candidate has a positive total gain.
    """
    if k < 1:
        raise exception.InvalidParameter("k must be at least 1, got {}.".format(k))
    if not 0.0 < tau <= 1.0:
        raise exception.InvalidParameter("tau must lie in (0, 1], got {}.".format(tau))
    if w_plus < 0 or w_minus < 0:
        raise exception.InvalidParameter("Weights must not be negative.")
    start_time = time.perf_counter()

    data = matrix.to_array()
    ones = data.astype(np.float64)
    zeros = 1.0 - ones
    basis = association_matrix(data, tau)
    candidates = list(range(matrix.n_cols))

    covered = np.zeros(data.shape, dtype=bool)
    initial = np.clip(_gains(ones, zeros, basis, w_plus, w_minus), 0.0, None).sum(axis=0)
    # Stable sort keeps lower column index first among equal initial covers.
    candidates.sort(key=lambda c: -initial[c])

    usage_cols = []     # type: List[np.ndarray]
    basis_rows = []     # type: List[np.ndarray]
    per_step = []       # type: List[Tuple[int, int]]
    while len(basis_rows) < k and candidates:
        free = ~covered
        gains = _gains(ones * free, zeros * free, basis[candidates], w_plus, w_minus)
        totals = np.clip(gains, 0.0, None).sum(axis=0)
        best = int(np.argmax(totals))
        if totals[best] <= 0.0:
            logger_algorithm.debug("Asso: no candidate with positive gain after {} factors.".format(len(basis_rows)))
            break
        candidate = candidates.pop(best)
        usage = gains[:, best] > 0.0
        vector = basis[candidate]
        covered |= np.outer(usage, vector)
        usage_cols.append(usage)
        basis_rows.append(vector)
        e_u = int(np.count_nonzero(data & ~covered))
        e_o = int(np.count_nonzero(~data & covered))
        per_step.append((e_u, e_o))
        logger_algorithm.debug("Asso factor {}: candidate {} used by {} rows, gain {:.2f}, E_u={} E_o={}.".format(
            len(basis_rows), candidate, int(usage.sum()), float(totals[best]), e_u, e_o))

    n_factors = len(basis_rows)
    if n_factors:
        a_arr = np.column_stack(usage_cols)
        b_arr = np.vstack(basis_rows)
    else:
        a_arr = np.zeros((matrix.n_rows, 0), dtype=bool)
        b_arr = np.zeros((0, matrix.n_cols), dtype=bool)
    a = BooleanMatrix.from_array(a_arr, n_cols=n_factors)
    b = BooleanMatrix.from_array(b_arr, n_cols=matrix.n_cols)
    res = FactorizationResult("asso", per_step, 0, 0, a=a, b=b)
    res.residual_uncovered, res.residual_overcovered = error_split(matrix, res.product())
    res.elapsed = time.perf_counter() - start_time
    logger_algorithm.info("Asso: {} of {} factors, E_u={} E_o={} in {:.02f} s.".format(
        n_factors, k, res.residual_uncovered, res.residual_overcovered, res.elapsed))
    return res
