"""

Command-line interface of the Boolean matrix factorization workbench.

Examples:

- factorize a matrix exactly with GreEss and store the factor concepts

    pygreess_bmf.py factorize --algorithm greess --input i.dense --out f.concepts

- compute the essential part of a matrix

    pygreess_bmf.py essential --input i.dense --out e.dense

- Boolean rank of a small matrix

    pygreess_bmf.py rank --input i.dense --max-concepts 20

- generate 50 datasets with the Set 1 parameters and evaluate GreEss and GreConD on them

    pygreess_bmf.py synth --preset Set1 --count 50 --out-dir set1
    pygreess_bmf.py eval --preset Set1 --count 50 --algorithms greess,grecond --out-dir results

Exit codes: 0 success, 1 usage error, 2 malformed or unreadable input, 3 concept limit exceeded.

"""

from typing import List, Optional, Sequence
import sys
import os
import argparse

from . import exception
from . import util
from .logger import logger
from .run import setup_basic_logging
from .boolmat import FORMATS, BooleanMatrix, format_dense, format_sparse, load_matrix, save_matrix
from .galois import enumerate_concepts, format_concepts, save_concepts
from .essential import compute_essential, essential_concepts, essential_report, minimum_factor_set
from .algorithms import ALGORITHMS, factorize
from .algorithms.asso import DEFAULT_TAU, DEFAULT_W_MINUS, DEFAULT_W_PLUS
from .synth import NOISE_KINDS, PRESETS, NoiseSpec, SynthSpec, add_noise, save_dataset
from .evaluation import DEFAULT_THRESHOLDS, format_noise_csv, run_experiment, run_noise_sweep, write_csv


__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_INPUT",
    "EXIT_LIMIT",

    "UsageError",

    "do_factorize",
    "do_essential",
    "do_rank",
    "do_concepts",
    "do_synth",
    "do_noise",
    "do_eval",
    "parse_arguments",
    "dispatch",
    "main",
]


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


class UsageError(exception.PyGreessException):
    """ Invalid command line. """


class ArgumentParser(argparse.ArgumentParser):
    """ Reports errors by raising UsageError instead of exiting. """

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _load(args) -> BooleanMatrix:
    return load_matrix(args.input, args.format, args.cols)


def _write_matrix(m: BooleanMatrix, ofspec: Optional[str], fmt: str) -> None:
    if ofspec:
        save_matrix(m, ofspec, fmt)
    else:
        sys.stdout.write(format_dense(m) if fmt == "dense" else format_sparse(m))


def _write_text(text: str, ofspec: Optional[str]) -> None:
    if ofspec:
        with util.atomic_write(ofspec) as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _parse_list(text: str, conv, name: str) -> List:
    try:
        return [conv(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError("Invalid {} list '{}'.".format(name, text))


def do_factorize(args) -> None:
    if args.algorithm == "asso":
        if args.max_factors is None:
            raise UsageError("asso requires --max-factors.")
        if args.out:
            raise UsageError("asso factors are not concepts; use --out-a / --out-b.")
    elif not (args.out or args.out_a or args.out_b or args.steps):
        raise UsageError("Nothing to write; specify --out, --out-a, --out-b or --steps.")
    matrix = _load(args)
    epsilon = args.epsilon if args.epsilon is not None else 0
    result = factorize(
        args.algorithm, matrix, epsilon=epsilon, max_factors=args.max_factors,
        tau=args.tau, w_plus=args.wplus, w_minus=args.wminus, max_concepts=args.max_concepts)
    if args.out:
        assert result.factors is not None
        save_concepts(result.factors, args.out)
    if args.out_a:
        save_matrix(result.a, args.out_a, args.format)
    if args.out_b:
        save_matrix(result.b, args.out_b, args.format)
    if args.steps:
        _write_text(result.steps_to_csv(), args.steps)
    logger.info("{}: k={} E_u={} E_o={} in {:.02f} s.".format(
        args.algorithm, result.k, result.residual_uncovered, result.residual_overcovered, result.elapsed))


def do_essential(args) -> None:
    matrix = _load(args)
    report = essential_report(matrix)
    _write_matrix(report.essential, args.out, args.format)
    logger.info(report.to_line())


def do_rank(args) -> None:
    matrix = _load(args)
    target = compute_essential(matrix) if args.of_essential else matrix
    concepts = minimum_factor_set(target, restrict_to_B_E=args.restrict, max_concepts=args.max_concepts)
    if args.witness:
        save_concepts(concepts, args.witness)
    sys.stdout.write("{}\n".format(len(concepts)))


def do_concepts(args) -> None:
    matrix = _load(args)
    if args.essential_only:
        concepts = essential_concepts(matrix, args.max_concepts)
    else:
        concepts = enumerate_concepts(matrix, args.max_concepts)
    _write_text(format_concepts(concepts), args.out)
    logger.info("{} concepts.".format(len(concepts)))


def _synth_spec(args) -> SynthSpec:
    fields = {
        "n_rows": args.rows,
        "n_cols": args.cols_count,
        "k_true": args.k,
        "dens_a": args.dens_a,
        "dens_b": args.dens_b,
    }
    if args.preset:
        spec = PRESETS[args.preset]
        fields = {key: value for key, value in fields.items() if value is not None}
        return spec.replace(seed=args.seed, count=args.count, **fields)
    missing = [key for key, value in fields.items() if value is None]
    if missing:
        raise UsageError("Missing dataset parameters without --preset: {}.".format(", ".join(missing)))
    return SynthSpec(seed=args.seed, count=args.count, **fields)


def do_synth(args) -> None:
    spec = _synth_spec(args)
    save_dataset(spec, args.out_dir, args.format, args.with_factors)


def do_noise(args) -> None:
    matrix = _load(args)
    noisy = add_noise(matrix, NoiseSpec(args.type, args.p, args.seed))
    _write_matrix(noisy, args.out, args.format)


def do_eval(args) -> None:
    spec = _synth_spec(args)
    algorithms = _parse_list(args.algorithms, str, "algorithm")
    for name in algorithms:
        if name not in ALGORITHMS:
            raise UsageError("Unknown algorithm '{}'.".format(name))
    thresholds = _parse_list(args.thresholds, float, "threshold")
    k_grid = _parse_list(args.k_grid, int, "k") if args.k_grid else None
    os.makedirs(args.out_dir, exist_ok=True)

    if args.noise_levels:
        levels = _parse_list(args.noise_levels, float, "noise level")
        kind = args.noise_type or "general"
        for name in algorithms:
            sweep = run_noise_sweep(spec, name, kind, levels, seed=args.noise_seed, epsilon=args.epsilon,
                                    workers=args.threads, against_clean=args.against_clean)
            _write_text(format_noise_csv(sweep), os.path.join(args.out_dir, "noise_{}.csv".format(name)))
        return

    noise = None
    if args.noise_type:
        noise = NoiseSpec(args.noise_type, args.noise_p, args.noise_seed)
    report = run_experiment(
        spec, algorithms, noise=noise, epsilon=args.epsilon, max_factors=args.max_factors,
        workers=args.threads, against_clean=args.against_clean,
        tau=args.tau, w_plus=args.wplus, w_minus=args.wminus, k_grid=k_grid)
    write_csv(report, args.out_dir, thresholds)
    logger.info("Mean essential ratio {:.4f}, mean density {:.4f}.".format(
        report.mean_essential_ratio, report.mean_density))


def _add_input_arguments(subparser) -> None:
    subparser.add_argument("-i", "--input", required=True, help="input matrix file specification")
    subparser.add_argument("--format", choices=FORMATS, default="dense", help="matrix file format")
    subparser.add_argument("--cols", type=int, help="column count of sparse input without a '#cols=' header")


def _add_asso_arguments(subparser) -> None:
    subparser.add_argument("--tau", type=float, default=DEFAULT_TAU, help="Asso confidence threshold")
    subparser.add_argument("--wplus", type=float, default=DEFAULT_W_PLUS, help="Asso reward for covered 1s")
    subparser.add_argument("--wminus", type=float, default=DEFAULT_W_MINUS, help="Asso penalty for covered 0s")


def _add_dataset_arguments(subparser) -> None:
    subparser.add_argument("--preset", choices=sorted(PRESETS), help="named dataset parameters")
    subparser.add_argument("--rows", type=int, help="number of rows")
    subparser.add_argument("--cols", dest="cols_count", type=int, help="number of columns")
    subparser.add_argument("--k", type=int, help="number of planted factors")
    subparser.add_argument("--dens-a", type=float, help="density of A")
    subparser.add_argument("--dens-b", type=float, help="density of B")
    subparser.add_argument("--seed", type=int, default=0, help="master random seed")
    subparser.add_argument("--count", type=int, default=1, help="number of datasets")


def parse_arguments(argv: Optional[Sequence[str]] = None):
    parser = ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--log-level", help="log level (default from PYGREESS_LOG_LEVEL or INFO)")
    subparsers = parser.add_subparsers(dest="cmd", required=True)

    subparser = subparsers.add_parser("factorize", help="factorize a matrix")
    _add_input_arguments(subparser)
    subparser.add_argument("-a", "--algorithm", choices=ALGORITHMS, default="greess", help="algorithm")
    group = subparser.add_mutually_exclusive_group()
    group.add_argument("--epsilon", type=int, help="number of 1s allowed to stay uncovered (default 0)")
    group.add_argument("--max-factors", type=int, help="number of factors")
    _add_asso_arguments(subparser)
    subparser.add_argument("--max-concepts", type=int, help="concept enumeration limit for grecon")
    subparser.add_argument("-o", "--out", help="output factor concepts file specification")
    subparser.add_argument("--out-a", help="output A matrix file specification")
    subparser.add_argument("--out-b", help="output B matrix file specification")
    subparser.add_argument("--steps", help="output per-step error CSV file specification")

    subparser = subparsers.add_parser("essential", help="compute the essential part E(I)")
    _add_input_arguments(subparser)
    subparser.add_argument("-o", "--out", help="output matrix file specification (default stdout)")

    subparser = subparsers.add_parser("rank", help="compute the Boolean rank of a small matrix")
    _add_input_arguments(subparser)
    subparser.add_argument("--max-concepts", type=int, default=util.get_rank_max_concepts(),
                           help="concept enumeration limit")
    subparser.add_argument("--restrict", action="store_true", help="search B_E(I) only")
    subparser.add_argument("--of-essential", action="store_true", help="rank of E(I) instead of I")
    subparser.add_argument("--witness", help="output minimum factor concepts file specification")

    subparser = subparsers.add_parser("concepts", help="list the formal concepts of a matrix")
    _add_input_arguments(subparser)
    subparser.add_argument("--max-concepts", type=int, default=util.get_max_concepts(),
                           help="concept enumeration limit")
    subparser.add_argument("--essential-only", action="store_true", help="list B_E(I) only")
    subparser.add_argument("-o", "--out", help="output concepts file specification (default stdout)")

    subparser = subparsers.add_parser("synth", help="generate synthetic datasets I = A o B")
    _add_dataset_arguments(subparser)
    subparser.add_argument("--format", choices=FORMATS, default="dense", help="matrix file format")
    subparser.add_argument("--with-factors", action="store_true", help="also write the planted A and B")
    subparser.add_argument("--out-dir", required=True, help="output directory")

    subparser = subparsers.add_parser("noise", help="add random noise to a matrix")
    _add_input_arguments(subparser)
    subparser.add_argument("--type", choices=NOISE_KINDS, required=True, help="noise type")
    subparser.add_argument("--p", type=float, required=True, help="flip probability")
    subparser.add_argument("--seed", type=int, default=0, help="random seed")
    subparser.add_argument("-o", "--out", help="output matrix file specification (default stdout)")

    subparser = subparsers.add_parser("eval", help="run a coverage experiment on synthetic datasets")
    _add_dataset_arguments(subparser)
    subparser.add_argument("--algorithms", default="greess,grecond", help="comma separated algorithm names")
    subparser.add_argument("--epsilon", type=int, default=0, help="number of 1s allowed to stay uncovered")
    subparser.add_argument("--max-factors", type=int, help="factor limit (Asso default: k of the datasets)")
    _add_asso_arguments(subparser)
    subparser.add_argument("--noise-type", choices=NOISE_KINDS, help="noise type")
    subparser.add_argument("--noise-p", type=float, default=0.0, help="flip probability")
    subparser.add_argument("--noise-seed", type=int, default=0, help="noise random seed")
    subparser.add_argument("--noise-levels", help="comma separated flip probabilities for a noise sweep")
    subparser.add_argument("--against-clean", action="store_true", help="measure coverage against noise-free data")
    subparser.add_argument("--threads", type=int, default=1, help="number of worker processes")
    subparser.add_argument("--k-grid", help="comma separated factor counts for coverage.csv")
    subparser.add_argument("--thresholds", default=",".join(str(t) for t in DEFAULT_THRESHOLDS),
                           help="comma separated coverage thresholds for thresholds.csv")
    subparser.add_argument("--out-dir", required=True, help="output directory")

    return parser.parse_args(argv)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """ Run a subcommand and return the process exit code. """
    try:
        args = parse_arguments(argv)
    except UsageError as e:
        print("ERROR: {}".format(e), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    setup_basic_logging(log_level=args.log_level)
    cmd_func = globals()["do_" + args.cmd]
    try:
        cmd_func(args)
    except (UsageError, exception.InvalidParameter) as e:
        print("ERROR: {}".format(e), file=sys.stderr)
        return EXIT_USAGE
    except exception.ConceptLimitExceeded as e:
        print("ERROR: {}".format(e), file=sys.stderr)
        return EXIT_LIMIT
    except (OSError, exception.PyGreessException) as e:
        print("ERROR: {}".format(e), file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(dispatch())
