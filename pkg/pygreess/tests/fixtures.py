"""

Matrix fixtures and brute-force helpers for the test-suite.

Contents:
- EXAMPLE - 6x5 object-attribute matrix with a known 4-factor exact decomposition
- EXAMPLE_FACTORS - that decomposition as (extent, intent) pairs, 0-based
- EXAMPLE_ESSENTIAL_CELLS - cells of its essential part
- RANK - 4x5 matrix of Boolean rank 3 whose essential part has Boolean rank 4
- RANK_ESSENTIAL - the essential part of RANK
- CONCEPT_NOT_IN_B_E - matrix with a concept outside of every minimal interval

"""

from typing import Iterator, List, Set, Tuple
import itertools
import random

from bitarray.util import zeros as bazeros

from pygreess.boolmat import BooleanMatrix, parse_dense
from pygreess.galois import FormalConcept


EXAMPLE = """
11010
10011
01100
00010
11110
11001
"""

EXAMPLE_FACTORS = [
    ({0, 4, 5}, {0, 1}),
    ({0, 1, 3, 4}, {3}),
    ({1, 5}, {0, 4}),
    ({2, 4}, {1, 2}),
]

EXAMPLE_A = """
1100
0110
0001
0100
1101
1010
"""

EXAMPLE_B = """
11000
00010
10001
01100
"""

EXAMPLE_ESSENTIAL_CELLS = {(0, 0), (0, 1), (1, 4), (2, 2), (3, 3), (5, 1), (5, 4)}

RANK = """
10111
01101
01001
10110
"""

RANK_ESSENTIAL = """
00001
00100
01000
10010
"""

RANK_A = """
110
011
001
100
"""

RANK_B = """
10110
00101
01001
"""

CONCEPT_NOT_IN_B_E = """
1100
1010
1001
"""


def matrix(text: str) -> BooleanMatrix:
    """ Parse a fixture, ignoring the surrounding blank lines. """
    return parse_dense(text.strip() + "\n")


def example_concepts() -> List[FormalConcept]:
    return [FormalConcept.from_sets(extent, intent, 6, 5) for extent, intent in EXAMPLE_FACTORS]


def random_matrix(rng: random.Random, n_rows: int, n_cols: int, density: float) -> BooleanMatrix:
    rows = [[int(rng.random() < density) for _ in range(n_cols)] for _ in range(n_rows)]
    return BooleanMatrix(n_rows, n_cols, rows)


def random_product(rng: random.Random, n_rows: int, n_cols: int, k: int, density: float) -> BooleanMatrix:
    """ A o B for random A (n x k) and B (k x m). """
    a = random_matrix(rng, n_rows, k, density)
    b = random_matrix(rng, k, n_cols, density)
    rows = []
    for a_row in a.rows:
        row = bazeros(n_cols)
        for p in a_row.itersearch(1):
            row |= b.rows[p]
        rows.append(row)
    return BooleanMatrix(n_rows, n_cols, rows)


def random_matrices(seed: int, count: int, max_rows: int, max_cols: int) -> Iterator[BooleanMatrix]:
    rng = random.Random(seed)
    for _ in range(count):
        n_rows = rng.randint(1, max_rows)
        n_cols = rng.randint(1, max_cols)
        yield random_matrix(rng, n_rows, n_cols, rng.choice((0.3, 0.5, 0.7)))


def brute_force_concepts(m: BooleanMatrix) -> Set[Tuple[frozenset, frozenset]]:
    """ Every (extent, intent) pair closed under the Galois operators, by trying all row subsets. """
    res = set()
    for size in range(m.n_rows + 1):
        for rows in itertools.combinations(range(m.n_rows), size):
            intent = {j for j in range(m.n_cols) if all(m[i, j] for i in rows)}
            extent = {i for i in range(m.n_rows) if all(m[i, j] for j in intent)}
            res.add((frozenset(extent), frozenset(intent)))
    return res


def brute_force_rank(m: BooleanMatrix) -> int:
    """ Boolean rank by trying growing sets of nonempty concepts. """
    concepts = [(e, i) for e, i in brute_force_concepts(m) if e and i]
    ones = set(m.cells())
    for k in range(len(concepts) + 1):
        for chosen in itertools.combinations(concepts, k):
            covered = {(r, c) for e, i in chosen for r in e for c in i}
            if covered == ones:
                return k
    raise AssertionError("no cover")
