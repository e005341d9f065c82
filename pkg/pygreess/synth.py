"""

Synthetic dataset generation (I = A o B with random factor matrices) and noise injection.

All randomness comes from numpy's counter-based Philox bit generator. Per-dataset streams
are derived from (seed, dataset index) with numpy.random.SeedSequence, so each dataset can
be regenerated on its own.

"""

from typing import Dict, List, Optional, Tuple
import os

import numpy as np

from . import exception
from . import util
from .logger import logger_synth
from .boolmat import BooleanMatrix, hamming_norm, save_matrix


__all__ = [
    "GENERATOR_NAME",
    "NOISE_KINDS",
    "DATA_STREAM",
    "NOISE_STREAM",
    "SET_1",
    "SET_2",
    "SET_3",
    "SET_4",
    "SET_5",
    "SET_6",
    "PRESETS",
    "NOISE_PRESET",

    "SynthSpec",
    "NoiseSpec",

    "make_rng",
    "gen_boolean_matrix",
    "gen_dataset",
    "gen_dataset_item",
    "expected_density",
    "add_noise",
    "format_metadata",
    "parse_metadata",
    "save_dataset",
]


GENERATOR_NAME = "numpy.random.Philox"
NOISE_KINDS = ("additive", "subtractive", "general")

DATA_STREAM = 0
NOISE_STREAM = 1


def _check_fraction(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise exception.InvalidParameter("{} must lie in [0, 1], got {}.".format(name, value))


class SynthSpec:
    """ Parameters of a family of synthetic datasets I = A o B. """

    __slots__ = ("n_rows", "n_cols", "k_true", "dens_a", "dens_b", "seed", "count")

    def __init__(self, n_rows: int, n_cols: int, k_true: int, dens_a: float, dens_b: float,
                 seed: int = 0, count: int = 1) -> None:
        if n_rows < 0 or n_cols < 0 or k_true < 0:
            raise exception.InvalidParameter("Dimensions and k_true must not be negative.")
        if count < 0:
            raise exception.InvalidParameter("count must not be negative, got {}.".format(count))
        if seed < 0:
            raise exception.InvalidParameter("seed must not be negative, got {}.".format(seed))
        _check_fraction("dens_a", dens_a)
        _check_fraction("dens_b", dens_b)
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        self.k_true = int(k_true)
        self.dens_a = float(dens_a)
        self.dens_b = float(dens_b)
        self.seed = int(seed)
        self.count = int(count)

    def __repr__(self) -> str:
        return "<{} {}x{} k={} dens_a={} dens_b={} seed={} count={}>".format(
            self.__class__.__name__, self.n_rows, self.n_cols, self.k_true,
            self.dens_a, self.dens_b, self.seed, self.count)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SynthSpec):
            return NotImplemented
        return all(getattr(self, name) == getattr(other, name) for name in self.__slots__)

    def replace(self, **kwargs) -> "SynthSpec":
        """ Copy with some fields changed, e.g. a preset at desk scale: SET_1.replace(count=50). """
        values = {name: getattr(self, name) for name in self.__slots__}
        values.update(kwargs)
        return SynthSpec(**values)


class NoiseSpec:
    """ Noise model: flip cells with probability p. """

    __slots__ = ("kind", "p", "seed")

    def __init__(self, kind: str, p: float, seed: int = 0) -> None:
        if kind not in NOISE_KINDS:
            raise exception.InvalidParameter("Unknown noise kind '{}'. Expected one of: {}.".format(
                kind, ", ".join(NOISE_KINDS)))
        _check_fraction("p", p)
        if seed < 0:
            raise exception.InvalidParameter("seed must not be negative, got {}.".format(seed))
        self.kind = kind
        self.p = float(p)
        self.seed = int(seed)

    def __repr__(self) -> str:
        return "<{} {} p={} seed={}>".format(self.__class__.__name__, self.kind, self.p, self.seed)


SET_1 = SynthSpec(300, 100, 20, 0.10, 0.10, count=1000)
SET_2 = SynthSpec(500, 250, 20, 0.05, 0.05, count=1000)
SET_3 = SynthSpec(500, 250, 20, 0.10, 0.05, count=1000)
SET_4 = SynthSpec(500, 250, 30, 0.12, 0.12, count=1000)
SET_5 = SynthSpec(1000, 500, 50, 0.10, 0.10, count=1000)
SET_6 = SynthSpec(10000, 1000, 50, 0.10, 0.10, count=1000)

PRESETS = {
    "Set1": SET_1,
    "Set2": SET_2,
    "Set3": SET_3,
    "Set4": SET_4,
    "Set5": SET_5,
    "Set6": SET_6,
}   # type: Dict[str, SynthSpec]

# Noise experiments reuse the Set 2 parameters.
NOISE_PRESET = SET_2


def make_rng(*keys: int, stream: int = DATA_STREAM) -> np.random.Generator:
    """
    Philox generator seeded from keys.

    Generators for the same keys and different streams are independent; noise draws use
    NOISE_STREAM so that they never replay the cells drawn for the data.
    """
    if stream == DATA_STREAM:
        seq = np.random.SeedSequence(list(keys))
    else:
        seq = np.random.SeedSequence(list(keys), spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(seq))


def _random_bits(rng: np.random.Generator, shape: Tuple[int, int], density: float) -> np.ndarray:
    return rng.random(shape) < density


def gen_boolean_matrix(rows: int, cols: int, density: float, seed: int) -> BooleanMatrix:
    """ Matrix with every cell independently 1 with probability density. """
    _check_fraction("density", density)
    if rows < 0 or cols < 0:
        raise exception.InvalidParameter("Dimensions must not be negative.")
    return BooleanMatrix.from_array(_random_bits(make_rng(seed), (rows, cols), density), n_cols=cols)


def gen_dataset_item(spec: SynthSpec, index: int) -> Tuple[BooleanMatrix, BooleanMatrix, BooleanMatrix]:
    """ The triple (I, A_true, B_true) number index of spec; identical to gen_dataset(spec)[index]. """
    rng = make_rng(spec.seed, index)
    a = _random_bits(rng, (spec.n_rows, spec.k_true), spec.dens_a)
    b = _random_bits(rng, (spec.k_true, spec.n_cols), spec.dens_b)
    product = (a.astype(np.int64) @ b.astype(np.int64)) > 0
    return (BooleanMatrix.from_array(product, n_cols=spec.n_cols),
            BooleanMatrix.from_array(a, n_cols=spec.k_true),
            BooleanMatrix.from_array(b, n_cols=spec.n_cols))


def gen_dataset(spec: SynthSpec) -> List[Tuple[BooleanMatrix, BooleanMatrix, BooleanMatrix]]:
    """
    Generate spec.count triples (I, A_true, B_true) with I = A_true o B_true.

    All-zero matrices are kept.
    """
    res = []
    for index in range(spec.count):
        triple = gen_dataset_item(spec, index)
        if not hamming_norm(triple[0]):
            logger_synth.debug("Dataset {} of {} is all-zero.".format(index, spec))
        res.append(triple)
    logger_synth.debug("Generated {} datasets for {}.".format(len(res), spec))
    return res


def expected_density(spec: SynthSpec) -> float:
    """ Probability of a 1 in a cell of I = A o B. """
    return 1.0 - (1.0 - spec.dens_a * spec.dens_b) ** spec.k_true


def add_noise(matrix: BooleanMatrix, spec: NoiseSpec, index: Optional[int] = None) -> BooleanMatrix:
    """
    Flip cells with probability p.

    additive flips only 0s, subtractive only 1s, general any cell. Batch runs pass the
    dataset index to draw an independent stream per dataset from the same seed.
    """
    if not spec.p:
        return matrix
    data = matrix.to_array()
    keys = (spec.seed,) if index is None else (spec.seed, index)
    rng = make_rng(*keys, stream=NOISE_STREAM)
    mask = _random_bits(rng, data.shape, spec.p)
    if spec.kind == "additive":
        noisy = data | mask
    elif spec.kind == "subtractive":
        noisy = data & ~mask
    else:
        noisy = data ^ mask
    logger_synth.debug("{} noise p={} changed {} cells.".format(
        spec.kind, spec.p, int(np.count_nonzero(noisy != data))))
    return BooleanMatrix.from_array(noisy, n_cols=matrix.n_cols)


#
# Metadata sidecar.
#

def format_metadata(spec: SynthSpec, noise: Optional[NoiseSpec] = None) -> str:
    lines = [
        "n_rows={}".format(spec.n_rows),
        "n_cols={}".format(spec.n_cols),
        "k_true={}".format(spec.k_true),
        "dens_a={}".format(spec.dens_a),
        "dens_b={}".format(spec.dens_b),
        "seed={}".format(spec.seed),
        "count={}".format(spec.count),
        "generator={}".format(GENERATOR_NAME),
    ]
    if noise is not None:
        lines += [
            "noise_kind={}".format(noise.kind),
            "noise_p={}".format(noise.p),
            "noise_seed={}".format(noise.seed),
        ]
    return "".join(line + "\n" for line in lines)


def parse_metadata(text: str) -> Dict[str, str]:
    res = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise exception.MatrixFormatError("Expected key=value, got '{}'.".format(line), lineno)
        res[key.strip()] = value.strip()
    return res


def save_dataset(spec: SynthSpec, out_dir: str, fmt: str = "dense", with_factors: bool = False) -> List[str]:
    """
    Generate the datasets of spec and write them to out_dir as i_0000.<fmt>, ... plus metadata.txt.

    With with_factors, the planted A and B are written next to every I. Returns the paths of the I files.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for index in range(spec.count):
        i_matrix, a, b = gen_dataset_item(spec, index)
        fspec = os.path.join(out_dir, "i_{:04d}.{}".format(index, fmt))
        save_matrix(i_matrix, fspec, fmt)
        if with_factors:
            save_matrix(a, os.path.join(out_dir, "a_{:04d}.{}".format(index, fmt)), fmt)
            save_matrix(b, os.path.join(out_dir, "b_{:04d}.{}".format(index, fmt)), fmt)
        paths.append(fspec)
    with util.atomic_write(os.path.join(out_dir, "metadata.txt")) as f:
        f.write(format_metadata(spec))
    logger_synth.info("Wrote {} datasets to '{}'.".format(len(paths), out_dir))
    return paths
