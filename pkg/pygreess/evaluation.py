"""

Coverage quality of factorizations and batch experiments over synthetic datasets.

Coverage quality of the first l factors is c = 1 - E(I, A o B) / ||I||. Experiments
aggregate per-l mean coverage curves, factor counts for coverage thresholds and the
share of essential cells, and write them as CSV tables.

"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
import functools
import os
import time

import numpy as np
from bitarray.util import count_and, zeros as bazeros

from . import exception
from . import util
from .util import Bits
from .logger import logger_eval
from .boolmat import BooleanMatrix, FactorSet, bool_product, error, hamming_norm
from .essential import essential_report
from .algorithms import ALGORITHMS, FactorizationResult, factorize
from .algorithms.asso import DEFAULT_TAU, DEFAULT_W_MINUS, DEFAULT_W_PLUS
from .synth import NoiseSpec, SynthSpec, add_noise, gen_dataset_item


__all__ = [
    "DEFAULT_THRESHOLDS",
    "CoverageCurve",
    "ExperimentReport",

    "coverage_quality",
    "coverage_curve",
    "result_curve",
    "factors_for_coverage",
    "run_experiment",
    "run_noise_sweep",
    "format_curve_csv",
    "format_thresholds_csv",
    "format_essential_csv",
    "format_coverage_csv",
    "format_noise_csv",
    "write_csv",
]


DEFAULT_THRESHOLDS = (0.5, 0.75, 0.9, 0.95, 0.99, 1.0)

Factors = Union[FactorSet, Tuple[BooleanMatrix, BooleanMatrix]]


class CoverageCurve:
    """ Coverage quality values c_0 .. c_k of the prefixes of a factorization. """

    __slots__ = ("values", "overcovered", "zero")

    def __init__(self, values: Sequence[float], overcovered: Sequence[int] = (), zero: bool = False) -> None:
        self.values = list(values)
        # E_o of every prefix, if known.
        self.overcovered = list(overcovered)
        # Input matrix without 1s; coverage is 1 by convention.
        self.zero = zero

    def __repr__(self) -> str:
        return "<{} k={} final={:.4f}{}>".format(
            self.__class__.__name__, self.k, self.values[-1] if self.values else 0.0, " zero" if self.zero else "")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, l: int) -> float:
        return self.values[l]

    @property
    def k(self) -> int:
        return len(self.values) - 1

    @property
    def exact(self) -> bool:
        return bool(self.values) and self.values[-1] == 1.0

    @property
    def from_below(self) -> bool:
        return not any(self.overcovered)

    def padded(self, length: int) -> List[float]:
        """ Values extended with the final value to the given length. """
        values = self.values[:length]
        return values + [values[-1]] * (length - len(values))


def _factor_pairs(factors: Factors) -> Tuple[int, Iterator[Tuple[Bits, Bits]]]:
    """ Number of factors and their (rows, columns) bitset pairs. """
    if isinstance(factors, FactorSet):
        return len(factors), ((c.extent_bits, c.intent_bits) for c in factors)
    a, b = factors
    if a.n_cols != b.n_rows:
        raise exception.DimensionMismatch(
            "Cannot multiply {}x{} and {}x{} matrices.".format(a.n_rows, a.n_cols, b.n_rows, b.n_cols))
    return a.n_cols, ((a.cols[p], b.rows[p]) for p in range(a.n_cols))


def _prefix_product(factors: Factors, l: int) -> BooleanMatrix:
    if isinstance(factors, FactorSet):
        return factors.product(l)
    a, b = factors
    return bool_product(a.submatrix(range(a.n_rows), range(l)), b.submatrix(range(l), range(b.n_cols)))


def coverage_quality(matrix: BooleanMatrix, factors: Factors, l: int) -> float:
    """ Coverage quality of the first l factors, given as a FactorSet or as (A, B). """
    k, _ = _factor_pairs(factors)
    if not 0 <= l <= k:
        raise exception.InvalidParameter("l must lie in [0, {}], got {}.".format(k, l))
    norm = hamming_norm(matrix)
    if not norm:
        return 1.0
    return 1.0 - error(matrix, _prefix_product(factors, l)) / norm


def coverage_curve(matrix: BooleanMatrix, factors: Factors) -> CoverageCurve:
    """ Coverage quality for l = 0 .. k, computed incrementally from a cumulative cover. """
    k, pairs = _factor_pairs(factors)
    norm = hamming_norm(matrix)
    if not norm:
        return CoverageCurve([1.0] * (k + 1), [0] * (k + 1), zero=True)
    covered = [bazeros(matrix.n_cols) for _ in range(matrix.n_rows)]
    matrix_rows = matrix.rows
    uncovered = norm
    overcovered = 0
    values = [0.0]
    overs = [0]
    for extent, intent in pairs:
        for i in extent.itersearch(1):
            new = intent & ~covered[i]
            if new.any():
                covered[i] |= new
                hits = count_and(new, matrix_rows[i])
                uncovered -= hits
                overcovered += new.count() - hits
        values.append(1.0 - (uncovered + overcovered) / norm)
        overs.append(overcovered)
    return CoverageCurve(values, overs)


def result_curve(matrix: BooleanMatrix, result: FactorizationResult) -> CoverageCurve:
    if result.factors is not None:
        return coverage_curve(matrix, result.factors)
    return coverage_curve(matrix, (result.a, result.b))


def factors_for_coverage(curve: Union[CoverageCurve, Sequence[float]], threshold: float) -> Optional[int]:
    """ Smallest l with c_l >= threshold, or None (NA) if the curve never gets there. """
    if not 0.0 < threshold <= 1.0:
        raise exception.InvalidParameter("threshold must lie in (0, 1], got {}.".format(threshold))
    for l, value in enumerate(curve):
        if value >= threshold:
            return l
    return None


class ExperimentReport:
    """ Aggregated outcome of running a set of algorithms on every dataset of a SynthSpec. """

    def __init__(self, spec: SynthSpec, algorithms: Sequence[str], noise: Optional[NoiseSpec] = None) -> None:
        self.spec = spec
        self.noise = noise
        self.algorithms = list(algorithms)
        # Per dataset index.
        self.curves = {name: [] for name in self.algorithms}      # type: Dict[str, List[CoverageCurve]]
        self.factor_counts = {name: [] for name in self.algorithms}    # type: Dict[str, List[int]]
        self.essential = []     # type: List[Tuple[int, int, int, float]]
        self.densities = []     # type: List[float]
        self.zero_datasets = 0
        # Total seconds per algorithm.
        self.timings = {name: 0.0 for name in self.algorithms}    # type: Dict[str, float]
        self.mean_curves = {}   # type: Dict[str, List[float]]
        self.k_grid = None      # type: Optional[List[int]]

    def __repr__(self) -> str:
        return "<{} {} datasets={} algorithms={}>".format(
            self.__class__.__name__, self.spec, len(self.essential), ",".join(self.algorithms))

    def aggregate(self) -> None:
        """ Per-l mean curves; shorter curves are extended with their final value. """
        self.mean_curves = {}
        for name in self.algorithms:
            curves = self.curves[name]
            if not curves:
                self.mean_curves[name] = []
                continue
            length = max(len(c) for c in curves)
            values = np.array([c.padded(length) for c in curves], dtype=np.float64)
            self.mean_curves[name] = [float(v) for v in values.mean(axis=0)]

    @property
    def mean_essential_ratio(self) -> float:
        if not self.essential:
            return 0.0
        return float(np.mean([row[3] for row in self.essential]))

    @property
    def mean_density(self) -> float:
        if not self.densities:
            return 0.0
        return float(np.mean(self.densities))

    def coverage_at(self, name: str, k: int) -> float:
        """ Mean coverage quality of the first k factors. """
        curve = self.mean_curves[name]
        if not curve:
            return 0.0
        return curve[min(k, len(curve) - 1)]

    def thresholds(self, name: str,
                   thresholds: Iterable[float] = DEFAULT_THRESHOLDS) -> List[Tuple[float, Optional[int]]]:
        """ Factor counts of the mean curve for every threshold; None is NA. """
        curve = self.mean_curves[name]
        return [(t, factors_for_coverage(curve, t)) for t in thresholds]


def _run_dataset(spec: SynthSpec, index: int, algorithms: Sequence[str], noise: Optional[NoiseSpec],
                 epsilon: int, max_factors: Dict[str, Optional[int]], against_clean: bool, params: Dict) -> Dict:
    clean = gen_dataset_item(spec, index)[0]
    data = clean if noise is None else add_noise(clean, noise, index)
    target = clean if against_clean else data
    report = essential_report(data)
    res = {
        "essential": (index, report.ones_I, report.ones_E, report.ratio),
        "density": report.ones_I / (data.n_rows * data.n_cols) if data.n_rows and data.n_cols else 0.0,
        "zero": report.is_zero,
        "curves": {},
    }
    for name in algorithms:
        result = factorize(name, data, epsilon=epsilon, max_factors=max_factors[name], **params)
        res["curves"][name] = (result_curve(target, result), result.k, result.elapsed)
    logger_eval.debug("Dataset {} done.".format(index))
    return res


def _map_datasets(run_one: Callable[[int], Dict], count: int, workers: int) -> Iterator[Dict]:
    """ Results of run_one for indices 0 .. count - 1, in index order. """
    if workers == 1 or count < 2:
        yield from map(run_one, range(count))
        return
    with ProcessPoolExecutor(max_workers=min(workers, count)) as executor:
        yield from executor.map(run_one, range(count))


def run_experiment(
        spec: SynthSpec,
        algorithms: Sequence[str],
        noise: Optional[NoiseSpec] = None,
        epsilon: int = 0,
        max_factors: Optional[int] = None,
        workers: int = 1,
        against_clean: bool = False,
        tau: float = DEFAULT_TAU,
        w_plus: float = DEFAULT_W_PLUS,
        w_minus: float = DEFAULT_W_MINUS,
        k_grid: Optional[Sequence[int]] = None) -> ExperimentReport:
    """
    Factorize every dataset of spec with every algorithm and aggregate the coverage curves.

    Coverage is measured against the (noisy) algorithm input unless against_clean is set.
    Asso runs with max_factors factors, defaulting to spec.k_true. With more than one
    worker the datasets are spread over a pool of processes; results are merged in
    dataset index order. k_grid lists the factor counts reported in coverage.csv.
    """
    for name in algorithms:
        if name not in ALGORITHMS:
            raise exception.InvalidParameter("Unknown algorithm '{}'.".format(name))
    if workers < 1:
        raise exception.InvalidParameter("workers must be at least 1, got {}.".format(workers))
    if "asso" in algorithms and max_factors is None and spec.k_true < 1:
        raise exception.InvalidParameter("Asso needs max_factors when k_true is 0.")
    start_time = time.perf_counter()
    params = {"tau": tau, "w_plus": w_plus, "w_minus": w_minus}

    caps = {name: max_factors for name in algorithms}   # type: Dict[str, Optional[int]]
    if "asso" in caps and max_factors is None:
        caps["asso"] = spec.k_true
    run_one = functools.partial(
        _run_dataset, spec, algorithms=list(algorithms), noise=noise, epsilon=epsilon, max_factors=caps,
        against_clean=against_clean, params=params)

    report = ExperimentReport(spec, algorithms, noise)
    report.k_grid = None if k_grid is None else list(k_grid)
    for item in _map_datasets(run_one, spec.count, workers):
        report.essential.append(item["essential"])
        report.densities.append(item["density"])
        report.zero_datasets += int(item["zero"])
        for name, (curve, k, elapsed) in item["curves"].items():
            report.curves[name].append(curve)
            report.factor_counts[name].append(k)
            report.timings[name] += elapsed
    report.aggregate()

    if report.zero_datasets:
        logger_eval.warning("{} of {} datasets are all-zero; their coverage counts as 1.".format(
            report.zero_datasets, spec.count))
    logger_eval.info("Experiment on {} datasets of {} done in {:.02f} s. Mean essential ratio {:.4f}.".format(
        spec.count, spec, time.perf_counter() - start_time, report.mean_essential_ratio))
    for name in algorithms:
        logger_eval.info("{}: {:.02f} s total.".format(name, report.timings[name]))
    return report


def run_noise_sweep(
        spec: SynthSpec,
        algorithm: str,
        kind: str,
        levels: Sequence[float],
        seed: int = 0,
        epsilon: int = 0,
        workers: int = 1,
        against_clean: bool = False) -> Dict[float, ExperimentReport]:
    """ One experiment per noise level p; the mean curves shift as the noise grows. """
    res = {}
    for p in levels:
        noise = NoiseSpec(kind, p, seed)
        logger_eval.info("Noise sweep: {}.".format(noise))
        res[p] = run_experiment(spec, [algorithm], noise if p else None, epsilon=epsilon,
                                workers=workers, against_clean=against_clean)
    return res


#
# CSV tables.
#

def _lines_to_text(lines: List[str]) -> str:
    return "".join(line + "\n" for line in lines)


def format_curve_csv(report: ExperimentReport) -> str:
    lines = ["algorithm,l,mean_coverage"]
    for name in report.algorithms:
        for l, value in enumerate(report.mean_curves[name]):
            lines.append("{},{},{:.4f}".format(name, l, value))
    return _lines_to_text(lines)


def format_thresholds_csv(report: ExperimentReport, thresholds: Iterable[float] = DEFAULT_THRESHOLDS) -> str:
    lines = ["algorithm,threshold,factors"]
    thresholds = list(thresholds)
    for name in report.algorithms:
        for t, count in report.thresholds(name, thresholds):
            # NA is an empty field.
            lines.append("{},{:.4f},{}".format(name, t, "" if count is None else count))
    return _lines_to_text(lines)


def format_essential_csv(report: ExperimentReport) -> str:
    lines = ["dataset,ones_I,ones_E,ratio"]
    for index, ones_i, ones_e, ratio in report.essential:
        lines.append("{},{},{},{:.4f}".format(index, ones_i, ones_e, ratio))
    return _lines_to_text(lines)


def format_coverage_csv(report: ExperimentReport, k_grid: Optional[Iterable[int]] = None) -> str:
    """ Mean coverage at fixed factor counts; the default grid is every 5th k of the longest curve. """
    if k_grid is None:
        k_grid = report.k_grid
    if k_grid is None:
        longest = max((len(c) for c in report.mean_curves.values()), default=1)
        k_grid = range(5, longest, 5)
    lines = ["algorithm,k,mean_coverage"]
    k_grid = list(k_grid)
    for name in report.algorithms:
        for k in k_grid:
            lines.append("{},{},{:.4f}".format(name, k, report.coverage_at(name, k)))
    return _lines_to_text(lines)


def format_noise_csv(sweep: Dict[float, ExperimentReport]) -> str:
    lines = ["algorithm,p,l,mean_coverage"]
    for p, report in sweep.items():
        for name in report.algorithms:
            for l, value in enumerate(report.mean_curves[name]):
                lines.append("{},{:.4f},{},{:.4f}".format(name, p, l, value))
    return _lines_to_text(lines)


def write_csv(report: ExperimentReport, out_dir: str,
              thresholds: Iterable[float] = DEFAULT_THRESHOLDS,
              k_grid: Optional[Iterable[int]] = None) -> List[str]:
    """ Write curve.csv, thresholds.csv, essential.csv and coverage.csv to out_dir. """
    os.makedirs(out_dir, exist_ok=True)
    tables = (
        ("curve.csv", format_curve_csv(report)),
        ("thresholds.csv", format_thresholds_csv(report, thresholds)),
        ("essential.csv", format_essential_csv(report)),
        ("coverage.csv", format_coverage_csv(report, k_grid)),
    )
    paths = []
    for fname, text in tables:
        fspec = os.path.join(out_dir, fname)
        with util.atomic_write(fspec) as f:
            f.write(text)
        paths.append(fspec)
    return paths
