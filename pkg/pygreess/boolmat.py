"""

Boolean matrix representation, Boolean algebra, clarification and text file I/O.

"""

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union, TYPE_CHECKING
import re

import numpy as np
from bitarray import bitarray, frozenbitarray
from bitarray.util import zeros as bazeros, count_xor

from . import exception
from . import util
from .util import Bits
from .logger import logger

if TYPE_CHECKING:
    from .galois import FormalConcept     # noqa


__all__ = [
    "BooleanMatrix",
    "FactorSet",

    "bool_product",
    "hamming_norm",
    "error",
    "error_split",
    "contained",
    "clarify",
    "factors_to_matrices",
    "factorization_as_rectangles",

    "parse_dense",
    "parse_sparse",
    "format_dense",
    "format_sparse",
    "load_matrix",
    "save_matrix",
    "FORMATS",
]


FORMATS = ("dense", "sparse")

RowLike = Union[bitarray, str, Sequence[int]]


def _freeze_row(row: RowLike, size: int, what: str) -> Bits:
    if isinstance(row, int):
        raise ValueError("{} must be a bit sequence, got the integer {}.".format(what, row))
    res = row if isinstance(row, frozenbitarray) else frozenbitarray(row)
    if len(res) != size:
        raise ValueError("{} has {} cells, expected {}.".format(what, len(res), size))
    return res


class BooleanMatrix:
    """
    Immutable n x m Boolean matrix.

    Rows are stored as frozen bitarrays of length m (bit j of row i is cell (i, j)). The
    transposed view, one bitarray of length n per column, is computed once at construction.
    """

    __slots__ = ("_n_rows", "_n_cols", "_rows", "_cols")

    def __init__(self, n_rows: int, n_cols: int, rows: Sequence[RowLike]) -> None:
        if n_rows < 0 or n_cols < 0:
            raise ValueError("Matrix dimensions must not be negative.")
        if len(rows) != n_rows:
            raise ValueError("Expected {} rows, got {}.".format(n_rows, len(rows)))
        frozen = tuple(_freeze_row(row, n_cols, "Row {}".format(i)) for i, row in enumerate(rows))
        cols = [bazeros(n_rows) for _ in range(n_cols)]
        for i, row in enumerate(frozen):
            for j in row.itersearch(1):
                cols[j][i] = 1
        self._n_rows = int(n_rows)
        self._n_cols = int(n_cols)
        self._rows = frozen
        self._cols = tuple(frozenbitarray(col) for col in cols)

    @classmethod
    def from_array(cls, data, n_cols: Optional[int] = None) -> "BooleanMatrix":
        """ Create a matrix from a 2-D array-like of 0/1 values. """
        arr = np.asarray(data)
        if arr.size == 0 and arr.ndim < 2:
            return cls(0, n_cols or 0, [])
        if arr.ndim != 2:
            raise ValueError("Expected a 2-D array, got {} dimensions.".format(arr.ndim))
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("Boolean matrix cells must be 0 or 1.")
        arr = arr.astype(np.uint8)
        rows = []
        for row in arr:
            bits = bitarray()
            bits.pack(row.tobytes())
            rows.append(frozenbitarray(bits))
        return cls(arr.shape[0], arr.shape[1], rows)

    @classmethod
    def from_cells(cls, n_rows: int, n_cols: int, cells: Iterable[Tuple[int, int]]) -> "BooleanMatrix":
        """ Create a matrix with 1s exactly at the given (row, column) cells. """
        rows = [bazeros(n_cols) for _ in range(n_rows)]
        for i, j in cells:
            if not 0 <= i < n_rows or not 0 <= j < n_cols:
                raise exception.InvalidIndex("Cell ({}, {}) outside of a {}x{} matrix.".format(i, j, n_rows, n_cols))
            rows[i][j] = 1
        return cls(n_rows, n_cols, rows)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BooleanMatrix":
        return cls(n_rows, n_cols, [util.empty_bits(n_cols)] * n_rows)

    @classmethod
    def ones(cls, n_rows: int, n_cols: int) -> "BooleanMatrix":
        return cls(n_rows, n_cols, [util.full_bits(n_cols)] * n_rows)

    @classmethod
    def identity(cls, n: int) -> "BooleanMatrix":
        return cls(n, n, [util.bits_from_indices([i], n) for i in range(n)])

    def __repr__(self) -> str:
        return "<{} {}x{} ones={}>".format(self.__class__.__name__, self._n_rows, self._n_cols, hamming_norm(self))

    def __str__(self) -> str:
        return format_dense(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n_rows, self._n_cols, self._rows))

    def __getitem__(self, cell: Tuple[int, int]) -> int:
        i, j = cell
        self.check_row(i)
        self.check_col(j)
        return self._rows[i][j]

    def __or__(self, other: "BooleanMatrix") -> "BooleanMatrix":
        """ Cellwise maximum. """
        _check_same_shape(self, other)
        return BooleanMatrix(self._n_rows, self._n_cols, [a | b for a, b in zip(self._rows, other._rows)])

    def __and__(self, other: "BooleanMatrix") -> "BooleanMatrix":
        """ Cellwise minimum. """
        _check_same_shape(self, other)
        return BooleanMatrix(self._n_rows, self._n_cols, [a & b for a, b in zip(self._rows, other._rows)])

    def __le__(self, other: "BooleanMatrix") -> bool:
        return contained(self, other)

    @property
    def n_rows(self) -> int:
        return self._n_rows

    @property
    def n_cols(self) -> int:
        return self._n_cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._n_rows, self._n_cols

    @property
    def rows(self) -> Tuple[Bits, ...]:
        """ Row bitsets. """
        return self._rows

    @property
    def cols(self) -> Tuple[Bits, ...]:
        """ Column bitsets (bit i of column j is cell (i, j)). """
        return self._cols

    @property
    def all_rows(self) -> Bits:
        """ Bitset of all row indices. """
        return util.full_bits(self._n_rows)

    @property
    def all_cols(self) -> Bits:
        """ Bitset of all column indices. """
        return util.full_bits(self._n_cols)

    @property
    def no_rows(self) -> Bits:
        return util.empty_bits(self._n_rows)

    @property
    def no_cols(self) -> Bits:
        return util.empty_bits(self._n_cols)

    def check_row(self, i: int) -> None:
        if not 0 <= i < self._n_rows:
            raise exception.InvalidIndex("Row index {} out of range 0..{}.".format(i, self._n_rows - 1))

    def check_col(self, j: int) -> None:
        if not 0 <= j < self._n_cols:
            raise exception.InvalidIndex("Column index {} out of range 0..{}.".format(j, self._n_cols - 1))

    def row(self, i: int) -> Bits:
        self.check_row(i)
        return self._rows[i]

    def col(self, j: int) -> Bits:
        self.check_col(j)
        return self._cols[j]

    def row_vector(self, i: int) -> List[int]:
        """ Row i as a list of 0/1 values. """
        return self.row(i).tolist()

    def col_vector(self, j: int) -> List[int]:
        """ Column j as a list of 0/1 values. """
        return self.col(j).tolist()

    def cells(self) -> Iterator[Tuple[int, int]]:
        """ Iterate over the cells containing 1 in row-major order. """
        for i, row in enumerate(self._rows):
            for j in row.itersearch(1):
                yield i, j

    def transpose(self) -> "BooleanMatrix":
        return BooleanMatrix(self._n_cols, self._n_rows, self._cols)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "BooleanMatrix":
        """ Matrix of the selected rows and columns, in the given order. """
        for j in col_indices:
            self.check_col(j)
        rows = []
        for i in row_indices:
            src = self.row(i)
            rows.append(frozenbitarray([src[j] for j in col_indices]))
        return BooleanMatrix(len(row_indices), len(col_indices), rows)

    def to_array(self) -> np.ndarray:
        """ Dense numpy copy with dtype bool. """
        arr = np.zeros((self._n_rows, self._n_cols), dtype=bool)
        for i, row in enumerate(self._rows):
            if row.any():
                arr[i] = np.frombuffer(row.unpack(), dtype=np.uint8).astype(bool)
        return arr


class FactorSet:
    """
    Ordered list of formal concepts used as factors of an n x m matrix.

    The order is the discovery order of the algorithm that produced the factors.
    """

    __slots__ = ("_concepts", "_n_rows", "_n_cols")

    def __init__(self, concepts: Iterable["FormalConcept"], n_rows: int, n_cols: int) -> None:
        self._concepts = tuple(concepts)
        self._n_rows = int(n_rows)
        self._n_cols = int(n_cols)
        for c in self._concepts:
            if len(c.extent_bits) != n_rows or len(c.intent_bits) != n_cols:
                raise exception.InvalidIndex("Factor {} does not fit a {}x{} matrix.".format(c, n_rows, n_cols))

    def __repr__(self) -> str:
        return "<{} k={} {}x{}>".format(self.__class__.__name__, len(self._concepts), self._n_rows, self._n_cols)

    def __len__(self) -> int:
        return len(self._concepts)

    def __iter__(self) -> Iterator["FormalConcept"]:
        return iter(self._concepts)

    def __getitem__(self, index):
        return self._concepts[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactorSet):
            return NotImplemented
        return (self._n_rows, self._n_cols, self._concepts) == (other._n_rows, other._n_cols, other._concepts)

    @property
    def concepts(self) -> Tuple["FormalConcept", ...]:
        return self._concepts

    @property
    def n_rows(self) -> int:
        return self._n_rows

    @property
    def n_cols(self) -> int:
        return self._n_cols

    def prefix(self, length: int) -> "FactorSet":
        return FactorSet(self._concepts[:length], self._n_rows, self._n_cols)

    def matrices(self, length: Optional[int] = None) -> Tuple[BooleanMatrix, BooleanMatrix]:
        return factors_to_matrices(self, len(self) if length is None else length)

    def product(self, length: Optional[int] = None) -> BooleanMatrix:
        """ A_F o B_F for the first length factors, computed without building A_F and B_F. """
        if length is None:
            length = len(self)
        rows = [bazeros(self._n_cols) for _ in range(self._n_rows)]
        for c in self._concepts[:length]:
            for i in c.extent_bits.itersearch(1):
                rows[i] |= c.intent_bits
        return BooleanMatrix(self._n_rows, self._n_cols, rows)


def _check_same_shape(c: BooleanMatrix, d: BooleanMatrix) -> None:
    if c.shape != d.shape:
        raise exception.DimensionMismatch("Matrix shapes differ: {}x{} vs {}x{}.".format(*c.shape, *d.shape))


def bool_product(a: BooleanMatrix, b: BooleanMatrix) -> BooleanMatrix:
    """ Boolean matrix product: (A o B)_ij = max_l min(A_il, B_lj). """
    if a.n_cols != b.n_rows:
        raise exception.DimensionMismatch(
            "Cannot multiply {}x{} and {}x{} matrices.".format(a.n_rows, a.n_cols, b.n_rows, b.n_cols))
    b_rows = b.rows
    rows = []
    for a_row in a.rows:
        row = bazeros(b.n_cols)
        for p in a_row.itersearch(1):
            row |= b_rows[p]
        rows.append(row)
    return BooleanMatrix(a.n_rows, b.n_cols, rows)


def hamming_norm(c: BooleanMatrix) -> int:
    """ Number of 1s. """
    return sum(row.count() for row in c.rows)


def error(c: BooleanMatrix, d: BooleanMatrix) -> int:
    """ Number of cells in which c and d differ. """
    _check_same_shape(c, d)
    return sum(count_xor(x, y) for x, y in zip(c.rows, d.rows))


def error_split(i_matrix: BooleanMatrix, m_matrix: BooleanMatrix) -> Tuple[int, int]:
    """ Uncovered (1 in I, 0 in M) and overcovered (0 in I, 1 in M) cell counts. """
    _check_same_shape(i_matrix, m_matrix)
    e_u = 0
    e_o = 0
    for x, y in zip(i_matrix.rows, m_matrix.rows):
        e_u += (x & ~y).count()
        e_o += (y & ~x).count()
    return e_u, e_o


def contained(j1: BooleanMatrix, j2: BooleanMatrix) -> bool:
    """ Check whether j1 <= j2 cellwise. """
    _check_same_shape(j1, j2)
    return all(util.is_subset(x, y) for x, y in zip(j1.rows, j2.rows))


def _first_occurrences(vectors: Sequence[Bits]) -> Tuple[List[int], List[int]]:
    kept = []       # type: List[int]
    index = {}
    mapping = []
    for i, v in enumerate(vectors):
        if v not in index:
            index[v] = len(kept)
            kept.append(i)
        mapping.append(index[v])
    return kept, mapping


def clarify(i_matrix: BooleanMatrix) -> Tuple[BooleanMatrix, List[int], List[int]]:
    """
    Remove duplicate rows and columns, keeping the first occurrence of each.

    Returns the clarified matrix and maps sending original row / column indices to the
    indices of their representatives in the clarified matrix.
    """
    kept_rows, row_map = _first_occurrences(i_matrix.rows)
    # Duplicate columns stay duplicate after dropping duplicate rows.
    kept_cols, col_map = _first_occurrences(i_matrix.cols)
    res = i_matrix.submatrix(kept_rows, kept_cols)
    return res, row_map, col_map


def factors_to_matrices(factors: FactorSet, length: Optional[int] = None) -> Tuple[BooleanMatrix, BooleanMatrix]:
    """
    Build A_F (n x l) and B_F (l x m) from the first l factors.

    Column p of A_F and row p of B_F are the characteristic vectors of the extent and
    intent of the p-th factor.
    """
    if length is None:
        length = len(factors)
    if length < 0 or length > len(factors):
        raise exception.InvalidParameter("Requested {} factors out of {}.".format(length, len(factors)))
    chosen = factors.concepts[:length]
    a = BooleanMatrix(length, factors.n_rows, [c.extent_bits for c in chosen]).transpose()
    b = BooleanMatrix(length, factors.n_cols, [c.intent_bits for c in chosen])
    return a, b


def factorization_as_rectangles(a: BooleanMatrix, b: BooleanMatrix) -> List[BooleanMatrix]:
    """ Split A o B into the k rectangles A_{_l} o B_{l_}. """
    if a.n_cols != b.n_rows:
        raise exception.DimensionMismatch(
            "Cannot multiply {}x{} and {}x{} matrices.".format(a.n_rows, a.n_cols, b.n_rows, b.n_cols))
    empty = util.empty_bits(b.n_cols)
    res = []
    for p in range(a.n_cols):
        column = a.cols[p]
        b_row = b.rows[p]
        rows = [b_row if column[i] else empty for i in range(a.n_rows)]
        res.append(BooleanMatrix(a.n_rows, b.n_cols, rows))
    return res


#
# Text formats.
#

_COLS_HEADER_RE = re.compile(r"^#\s*cols\s*=\s*(\d+)\s*$")
_DENSE_ROW_RE = re.compile(r"^(?:[01](?:[ ,]?[01])*)?$")


def _split_lines(text: str) -> List[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def _parse_header(line: str) -> Optional[int]:
    m = _COLS_HEADER_RE.match(line.strip())
    return int(m.group(1)) if m else None


def parse_dense(text: str) -> BooleanMatrix:
    """
    Parse the dense text format: one line per row, one 0/1 character per cell.

    Cells may be separated by a single space or comma. Lines starting with '#' are
    comments; a "#cols=m" comment declares the width of a matrix without rows.
    """
    rows = []
    n_cols = None     # type: Optional[int]
    declared = None   # type: Optional[int]
    for lineno, line in enumerate(_split_lines(text), start=1):
        if line.startswith("#"):
            header = _parse_header(line)
            if header is not None:
                declared = header
            continue
        if not _DENSE_ROW_RE.match(line):
            raise exception.MatrixFormatError("Invalid dense row '{}'.".format(line), lineno)
        cells = line.replace(" ", "").replace(",", "")
        if n_cols is None:
            n_cols = len(cells)
        elif len(cells) != n_cols:
            raise exception.MatrixFormatError(
                "Ragged row: expected {} cells, got {}.".format(n_cols, len(cells)), lineno)
        rows.append(frozenbitarray(cells))
    if n_cols is None:
        n_cols = declared or 0
    elif declared is not None and declared != n_cols:
        raise exception.MatrixFormatError("Declared {} columns, rows have {}.".format(declared, n_cols))
    return BooleanMatrix(len(rows), n_cols, rows)


def parse_sparse(text: str, n_cols: Optional[int] = None) -> BooleanMatrix:
    """
    Parse the FIMI-style sparse format.

    Each line lists the whitespace-separated 0-based column indices of the 1s of a row;
    an empty line is an empty row. The column count comes from n_cols or from a
    "#cols=m" header line.
    """
    lines = _split_lines(text)
    rows = []
    row_lines = []
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("#"):
            header = _parse_header(line)
            if header is not None and n_cols is None:
                n_cols = header
            continue
        row_lines.append((lineno, line))
    if n_cols is None:
        raise exception.MatrixFormatError("Sparse input requires a declared column count (#cols=m).")
    for lineno, line in row_lines:
        row = bazeros(n_cols)
        for token in line.split():
            try:
                j = int(token)
            except ValueError:
                raise exception.MatrixFormatError("Invalid column index '{}'.".format(token), lineno)
            if not 0 <= j < n_cols:
                raise exception.MatrixFormatError("Column index {} out of range 0..{}.".format(j, n_cols - 1), lineno)
            row[j] = 1
        rows.append(row)
    return BooleanMatrix(len(rows), n_cols, rows)


def format_dense(m: BooleanMatrix) -> str:
    lines = []
    if not m.n_rows:
        lines.append("#cols={}".format(m.n_cols))
    for row in m.rows:
        lines.append(row.to01())
    return "".join(line + "\n" for line in lines)


def format_sparse(m: BooleanMatrix) -> str:
    lines = ["#cols={}".format(m.n_cols)]
    for row in m.rows:
        lines.append(" ".join(str(j) for j in row.itersearch(1)))
    return "".join(line + "\n" for line in lines)


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise exception.InvalidParameter("Unknown matrix format '{}'. Expected one of {}.".format(fmt, FORMATS))


def load_matrix(fspec: str, fmt: str = "dense", n_cols: Optional[int] = None) -> BooleanMatrix:
    _check_format(fmt)
    with open(fspec, "r") as f:
        text = f.read()
    if fmt == "dense":
        res = parse_dense(text)
    else:
        res = parse_sparse(text, n_cols)
    logger.debug("Loaded {}x{} matrix from '{}'.".format(res.n_rows, res.n_cols, fspec))
    return res


def save_matrix(m: BooleanMatrix, fspec: str, fmt: str = "dense") -> None:
    _check_format(fmt)
    text = format_dense(m) if fmt == "dense" else format_sparse(m)
    with util.atomic_write(fspec) as f:
        f.write(text)
