"""

Utility classes and functions.

Row and column sets are frozen bitarrays of fixed length: bit i is set when index i is a
member. Sets over the same universe always have the same length, so they combine with
&, | and ~ directly.

"""

from typing import FrozenSet, Iterable, List
from contextlib import contextmanager
import os
import tempfile

from bitarray import bitarray, frozenbitarray
from bitarray.util import zeros as bazeros, subset as basubset

from . import exception


__all__ = [
    "Bits",
    "empty_bits",
    "full_bits",
    "bits_from_indices",
    "indices_from_bits",
    "set_from_bits",
    "is_subset",

    "get_rank_max_concepts",
    "get_max_concepts",
    "slow_tests_enabled",

    "atomic_write",
]


Bits = frozenbitarray

DEFAULT_RANK_MAX_CONCEPTS = 20
DEFAULT_MAX_CONCEPTS = 100000


def empty_bits(size: int) -> Bits:
    return frozenbitarray(bazeros(size))


def full_bits(size: int) -> Bits:
    res = bazeros(size)
    res.setall(1)
    return frozenbitarray(res)


def bits_from_indices(indices: Iterable[int], size: int) -> Bits:
    """ Convert a collection of indices to a bitset of the given length. """
    res = bazeros(size)
    for i in indices:
        i = int(i)
        if not 0 <= i < size:
            raise exception.InvalidIndex("Index {} out of range 0..{}.".format(i, size - 1))
        res[i] = 1
    return frozenbitarray(res)


def indices_from_bits(bits: bitarray) -> List[int]:
    return list(bits.itersearch(1))


def set_from_bits(bits: bitarray) -> FrozenSet[int]:
    return frozenset(bits.itersearch(1))


def is_subset(a: bitarray, b: bitarray) -> bool:
    """ Check whether bitset a is contained in bitset b. """
    return basubset(a, b)


def _get_int_env(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        res = int(value)
    except ValueError:
        raise exception.InvalidParameter("Environment variable {} must be an integer, got '{}'.".format(name, value))
    if res < 0:
        raise exception.InvalidParameter("Environment variable {} must not be negative.".format(name))
    return res


def get_rank_max_concepts() -> int:
    """ Get the concept count cap of the exhaustive Boolean rank search. """
    return _get_int_env("PYGREESS_RANK_MAX_CONCEPTS", DEFAULT_RANK_MAX_CONCEPTS)


def get_max_concepts() -> int:
    """ Get the default concept enumeration cap. """
    return _get_int_env("PYGREESS_MAX_CONCEPTS", DEFAULT_MAX_CONCEPTS)


def slow_tests_enabled() -> bool:
    return os.environ.get("PYGREESS_SLOW_TESTS", "") not in ("", "0")


def _default_file_mode() -> int:
    umask = os.umask(0)
    os.umask(umask)
    return 0o666 & ~umask


@contextmanager
def atomic_write(fspec: str, mode: str = "w"):
    """
    Open a temporary file next to fspec for writing and move it in place on success.

    The result gets the permissions a plain open() would give it. Nothing is left behind
    if the block raises.
    """
    dspec = os.path.dirname(os.path.abspath(fspec))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=dspec)
    try:
        with os.fdopen(fd, mode) as f:
            yield f
        os.chmod(tmp, _default_file_mode())
        os.replace(tmp, fspec)
    except BaseException:
        try:
            os.remove(tmp)
        except OSError:
            pass
        raise
