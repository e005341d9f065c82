"""

Exception declarations.

"""

from typing import Optional


__all__ = [
    "PyGreessException",
    "DimensionMismatch",
    "InvalidIndex",
    "InvalidParameter",
    "MatrixFormatError",
    "EmptyInterval",
    "NotAConcept",
    "NotFromBelow",
    "ConceptLimitExceeded",
    "FactorizationStalled",
]


class PyGreessException(Exception):
    """ Base class for all PyGreess exceptions. """


class DimensionMismatch(PyGreessException, ValueError):
    """ Matrix dimensions do not conform. """


class InvalidIndex(PyGreessException, IndexError):
    """ Row or column index out of range. """


class InvalidParameter(PyGreessException, ValueError):
    """ Invalid algorithm or generator parameter. """


class MatrixFormatError(PyGreessException):
    """ Malformed matrix or concept file. """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)
        self.line = line


class EmptyInterval(PyGreessException):
    """ The requested concept lattice interval is empty. """


class NotAConcept(PyGreessException):
    """ A pair of sets is not a formal concept of the matrix. """


class NotFromBelow(PyGreessException):
    """ A factorization covers a 0 of the input matrix. """


class ConceptLimitExceeded(PyGreessException):
    """ Too many formal concepts for an exhaustive computation. """

    def __init__(self, limit: int, message: Optional[str] = None) -> None:
        if message is None:
            message = "More than {} formal concepts. Use a smaller matrix or raise the limit.".format(limit)
        super().__init__(message)
        self.limit = limit


class FactorizationStalled(PyGreessException):
    """ A greedy search found no factor covering an uncovered entry. """
