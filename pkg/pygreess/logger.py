"""

Logging.

"""

import logging


__all__ = [
    "logger",
    "logger_algorithm",
    "logger_eval",
    "logger_synth",
]


# General logger - I/O, command-line and general PyGreess log messages.
logger = logging.getLogger("pygreess.general")
# Algorithm logger - progress of the factorization algorithms.
logger_algorithm = logging.getLogger("pygreess.algorithm")
# Evaluation logger - experiment progress and timing.
logger_eval = logging.getLogger("pygreess.eval")
# Synthetic data logger.
logger_synth = logging.getLogger("pygreess.synth")
