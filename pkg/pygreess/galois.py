"""

Galois connection operators, formal concepts, concept enumeration and concept lattice intervals.

Operators come in two flavours: the *_bits functions work on frozen bitarrays and are used
by the algorithms, the set-based ones validate indices and return frozensets.

"""

from typing import Iterable, Iterator, List, Optional, Tuple
import re

from bitarray import bitarray, frozenbitarray

from . import exception
from . import util
from .util import Bits
from .boolmat import BooleanMatrix


__all__ = [
    "FormalConcept",
    "Interval",

    "up_bits",
    "down_bits",
    "closure_rows_bits",
    "closure_cols_bits",
    "up",
    "down",
    "object_concept",
    "attribute_concept",
    "is_concept",
    "iter_concepts",
    "enumerate_concepts",
    "interval",
    "interval_concepts",
    "interval_contained",
    "concept_covers",

    "format_concepts",
    "parse_concepts",
    "save_concepts",
    "load_concepts",
]


class FormalConcept:
    """
    Formal concept <extent, intent> of a Boolean matrix.

    Extent and intent are kept as frozen bitarrays of length n and m; the extent/intent
    properties expose them as frozensets of 0-based row / column indices.
    """

    __slots__ = ("_extent", "_intent")

    def __init__(self, extent_bits: bitarray, intent_bits: bitarray) -> None:
        if not isinstance(extent_bits, bitarray) or not isinstance(intent_bits, bitarray):
            raise TypeError("Extent and intent must be bitarrays.")
        self._extent = extent_bits if isinstance(extent_bits, frozenbitarray) else frozenbitarray(extent_bits)
        self._intent = intent_bits if isinstance(intent_bits, frozenbitarray) else frozenbitarray(intent_bits)

    @classmethod
    def from_sets(cls, extent: Iterable[int], intent: Iterable[int], n_rows: int, n_cols: int) -> "FormalConcept":
        """ Create a concept of an n_rows x n_cols matrix from row and column indices. """
        return cls(util.bits_from_indices(extent, n_rows), util.bits_from_indices(intent, n_cols))

    def __repr__(self) -> str:
        return "<{} extent={} intent={}>".format(
            self.__class__.__name__, util.indices_from_bits(self._extent), util.indices_from_bits(self._intent))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalConcept):
            return NotImplemented
        return self._extent == other._extent and self._intent == other._intent

    def __hash__(self) -> int:
        return hash((self._extent, self._intent))

    def __le__(self, other: "FormalConcept") -> bool:
        """ Concept order: subconcept iff extent inclusion. """
        return util.is_subset(self._extent, other._extent)

    @property
    def extent_bits(self) -> Bits:
        return self._extent

    @property
    def intent_bits(self) -> Bits:
        return self._intent

    @property
    def extent(self):
        return util.set_from_bits(self._extent)

    @property
    def intent(self):
        return util.set_from_bits(self._intent)

    @property
    def area(self) -> int:
        """ Number of cells of the rectangle extent x intent. """
        return self._extent.count() * self._intent.count()

    def covers(self, i: int, j: int) -> bool:
        if not 0 <= i < len(self._extent) or not 0 <= j < len(self._intent):
            return False
        return bool(self._extent[i] and self._intent[j])

    def to_line(self) -> str:
        extent = " ".join(str(i) for i in self._extent.itersearch(1))
        intent = " ".join(str(j) for j in self._intent.itersearch(1))
        return "extent:{} | intent:{}".format(" " + extent if extent else "", " " + intent if intent else "")


class Interval:
    """
    Interval [gamma(C), mu(D)] of the concept lattice of a matrix.

    Its members are the concepts whose extent contains C and whose intent contains D.
    The interval is empty unless C x D is contained in the matrix.
    """

    __slots__ = ("lower", "upper", "rows", "cols")

    def __init__(self, lower: FormalConcept, upper: FormalConcept, rows: Bits, cols: Bits) -> None:
        # gamma(C)
        self.lower = lower
        # mu(D)
        self.upper = upper
        # Generators C (rows) and D (columns) as bitsets.
        self.rows = rows
        self.cols = cols

    def __repr__(self) -> str:
        return "<{} {} .. {}{}>".format(
            self.__class__.__name__, self.lower, self.upper, " empty" if self.is_empty else "")

    @property
    def is_empty(self) -> bool:
        return not self.lower <= self.upper

    def contains(self, concept: FormalConcept) -> bool:
        if self.is_empty:
            return False
        return util.is_subset(self.rows, concept.extent_bits) and util.is_subset(self.cols, concept.intent_bits)


#
# Galois operators.
#

def up_bits(matrix: BooleanMatrix, rows: Bits) -> Bits:
    """ Columns shared by all the given rows. """
    res = matrix.all_cols
    matrix_rows = matrix.rows
    for i in rows.itersearch(1):
        res = res & matrix_rows[i]
        if not res.any():
            break
    return res


def down_bits(matrix: BooleanMatrix, cols: Bits) -> Bits:
    """ Rows having all the given columns. """
    res = matrix.all_rows
    matrix_cols = matrix.cols
    for j in cols.itersearch(1):
        res = res & matrix_cols[j]
        if not res.any():
            break
    return res


def closure_rows_bits(matrix: BooleanMatrix, rows: Bits) -> Bits:
    return down_bits(matrix, up_bits(matrix, rows))


def closure_cols_bits(matrix: BooleanMatrix, cols: Bits) -> Bits:
    return up_bits(matrix, down_bits(matrix, cols))


def up(matrix: BooleanMatrix, rows: Iterable[int]):
    """ The set of columns shared by all rows in rows (all columns for no rows). """
    return util.set_from_bits(up_bits(matrix, util.bits_from_indices(rows, matrix.n_rows)))


def down(matrix: BooleanMatrix, cols: Iterable[int]):
    """ The set of rows sharing all columns in cols (all rows for no columns). """
    return util.set_from_bits(down_bits(matrix, util.bits_from_indices(cols, matrix.n_cols)))


def object_concept(matrix: BooleanMatrix, i: int) -> FormalConcept:
    """ gamma(i) = <{i}^up^down, {i}^up>, the least concept whose extent contains row i. """
    intent = matrix.row(i)
    return FormalConcept(down_bits(matrix, intent), intent)


def attribute_concept(matrix: BooleanMatrix, j: int) -> FormalConcept:
    """ mu(j) = <{j}^down, {j}^down^up>, the greatest concept whose intent contains column j. """
    extent = matrix.col(j)
    return FormalConcept(extent, up_bits(matrix, extent))


def is_concept_bits(matrix: BooleanMatrix, rows: Bits, cols: Bits) -> bool:
    return up_bits(matrix, rows) == cols and down_bits(matrix, cols) == rows


def is_concept(matrix: BooleanMatrix, rows: Iterable[int], cols: Iterable[int]) -> bool:
    return is_concept_bits(
        matrix, util.bits_from_indices(rows, matrix.n_rows), util.bits_from_indices(cols, matrix.n_cols))


def concept_covers(concept: FormalConcept, i: int, j: int) -> bool:
    return concept.covers(i, j)


#
# Concept enumeration.
#

def _restricted_closure(
        matrix: BooleanMatrix, row_universe: Bits, col_universe: Bits, cols: bitarray) -> Tuple[Bits, Bits]:
    extent = row_universe
    matrix_cols = matrix.cols
    for j in cols.itersearch(1):
        extent = extent & matrix_cols[j]
    intent = col_universe
    matrix_rows = matrix.rows
    for i in extent.itersearch(1):
        intent = intent & matrix_rows[i]
        if not intent.any():
            break
    return extent, intent


def iter_concepts(
        matrix: BooleanMatrix,
        row_universe: Optional[Bits] = None,
        col_universe: Optional[Bits] = None) -> Iterator[FormalConcept]:
    """
    Generate the formal concepts in lectic order of intents (NextClosure).

    With row_universe / col_universe the concepts of the subcontext restricted to those
    rows and columns are produced, reported in the host matrix's index space.
    """
    if row_universe is None:
        row_universe = matrix.all_rows
    if col_universe is None:
        col_universe = matrix.all_cols
    attrs = util.indices_from_bits(col_universe)

    extent, intent = _restricted_closure(matrix, row_universe, col_universe, matrix.no_cols)
    yield FormalConcept(extent, intent)
    while True:
        for j in reversed(attrs):
            if intent[j]:
                continue
            candidate = bitarray(intent)
            candidate[j] = 1
            candidate[j + 1:] = 0
            next_extent, next_intent = _restricted_closure(matrix, row_universe, col_universe, candidate)
            if next_intent[:j] == intent[:j]:
                extent, intent = next_extent, next_intent
                yield FormalConcept(extent, intent)
                break
        else:
            return


def enumerate_concepts(
        matrix: BooleanMatrix,
        max_concepts: Optional[int] = None) -> List[FormalConcept]:
    """
    All formal concepts of the matrix in lectic order of intents.

    The output may be exponential in min(n, m); ConceptLimitExceeded is raised as soon
    as more than max_concepts concepts are found.
    """
    res = []
    for concept in iter_concepts(matrix):
        res.append(concept)
        if max_concepts is not None and len(res) > max_concepts:
            raise exception.ConceptLimitExceeded(max_concepts)
    return res


#
# Intervals.
#

def interval_bits(matrix: BooleanMatrix, rows: Bits, cols: Bits) -> Interval:
    c_up = up_bits(matrix, rows)
    d_down = down_bits(matrix, cols)
    lower = FormalConcept(down_bits(matrix, c_up), c_up)
    upper = FormalConcept(d_down, up_bits(matrix, d_down))
    return Interval(lower, upper, rows, cols)


def interval(matrix: BooleanMatrix, rows: Iterable[int], cols: Iterable[int]) -> Interval:
    """ The interval I_{C,D} = [gamma(C), mu(D)]; non-empty iff C x D is contained in the matrix. """
    return interval_bits(
        matrix, util.bits_from_indices(rows, matrix.n_rows), util.bits_from_indices(cols, matrix.n_cols))


def interval_concepts_bits(matrix: BooleanMatrix, rows: Bits, cols: Bits) -> List[FormalConcept]:
    c_up = up_bits(matrix, rows)
    if not util.is_subset(cols, c_up):
        raise exception.EmptyInterval("The interval of rows {} and columns {} is empty.".format(
            util.indices_from_bits(rows), util.indices_from_bits(cols)))
    # The interval is the concept lattice of the context restricted to D^down x C^up.
    return list(iter_concepts(matrix, down_bits(matrix, cols), c_up))


def interval_concepts(matrix: BooleanMatrix, rows: Iterable[int], cols: Iterable[int]) -> List[FormalConcept]:
    """ Member concepts of the interval I_{C,D}, in lectic order of intents. """
    return interval_concepts_bits(
        matrix, util.bits_from_indices(rows, matrix.n_rows), util.bits_from_indices(cols, matrix.n_cols))


def interval_contained(matrix: BooleanMatrix, i: int, j: int, i2: int, j2: int) -> bool:
    """ Check whether I_ij is contained in I_i2j2, i.e. {i}^up <= {i2}^up and {j}^down <= {j2}^down. """
    for r, c in ((i, j), (i2, j2)):
        if not matrix[r, c]:
            raise exception.EmptyInterval("Cell ({}, {}) contains 0, its interval is empty.".format(r, c))
    return util.is_subset(matrix.rows[i], matrix.rows[i2]) and util.is_subset(matrix.cols[j], matrix.cols[j2])


#
# Concept list text format.
#

_CONCEPT_RE = re.compile(r"^extent:([\d\s]*)\|\s*intent:([\d\s]*)$")


def format_concepts(concepts: Iterable[FormalConcept]) -> str:
    return "".join(c.to_line() + "\n" for c in concepts)


def parse_concepts(text: str, n_rows: int, n_cols: int) -> List[FormalConcept]:
    """
    Parse lines of the form "extent: 0 4 5 | intent: 0 1" into concepts of an n_rows x n_cols matrix.

    Blank and '#' lines are skipped.
    """
    res = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = _CONCEPT_RE.match(line)
        if not m:
            raise exception.MatrixFormatError("Invalid concept line '{}'.".format(line), lineno)
        extent = [int(t) for t in m.group(1).split()]
        intent = [int(t) for t in m.group(2).split()]
        try:
            res.append(FormalConcept.from_sets(extent, intent, n_rows, n_cols))
        except exception.InvalidIndex as e:
            raise exception.MatrixFormatError(str(e), lineno)
    return res


def save_concepts(concepts: Iterable[FormalConcept], fspec: str) -> None:
    text = format_concepts(concepts)
    with util.atomic_write(fspec) as f:
        f.write(text)


def load_concepts(fspec: str, n_rows: int, n_cols: int) -> List[FormalConcept]:
    with open(fspec, "r") as f:
        return parse_concepts(f.read(), n_rows, n_cols)
