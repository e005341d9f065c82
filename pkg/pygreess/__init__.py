"""

PyGreess - Boolean matrix factorization from below via essential parts, with baselines and a synthetic evaluation bench.

"""

import sys

from .logger import *
from .run import *

from .boolmat import BooleanMatrix, FactorSet, bool_product, load_matrix, save_matrix
from .galois import FormalConcept, Interval
from .essential import boolean_rank_oracle, compute_essential, essential_report
from .algorithms import FactorizationResult, asso, factorize, grecon, grecond, greess
from .evaluation import coverage_curve, factors_for_coverage, run_experiment

from . import exception
from . import util
from . import boolmat
from . import galois
from . import essential
from . import algorithms
from . import synth
from . import evaluation
from . import cli


__version__ = "0.1.0"

__all__ = [
    "logger",
    "logger_algorithm",
    "logger_eval",
    "logger_synth",

    "BooleanMatrix",
    "FactorSet",
    "FormalConcept",
    "Interval",
    "FactorizationResult",

    "setup_basic_logging",
    "load_matrix",
    "save_matrix",
    "bool_product",
    "compute_essential",
    "essential_report",
    "boolean_rank_oracle",
    "factorize",
    "greess",
    "grecond",
    "grecon",
    "asso",
    "coverage_curve",
    "factors_for_coverage",
    "run_experiment",
]

if sys.version_info < (3, 10, 0):
    sys.exit("ERROR: PyGreess requires Python 3.10.0 or newer.")
del sys
