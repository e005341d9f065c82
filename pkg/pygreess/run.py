"""

Helper functions for running PyGreess applications.

"""

from typing import Optional, Union
import sys
import os
import logging

from .logger import logger, logger_algorithm, logger_eval, logger_synth


__all__ = [
    "setup_basic_logging",
]


def setup_basic_logging(
        log_level: Optional[Union[str, int]] = None,
        algorithm_log_level: Optional[Union[str, int]] = None,
        eval_log_level: Optional[Union[str, int]] = None,
        target=sys.stderr) -> None:

    if log_level is None:
        log_level = os.environ.get("PYGREESS_LOG_LEVEL", logging.INFO)
    if algorithm_log_level is None:
        # Per-factor progress is noisy on large inputs.
        algorithm_log_level = os.environ.get("PYGREESS_ALGORITHM_LOG_LEVEL", logging.WARNING)
    if eval_log_level is None:
        eval_log_level = os.environ.get("PYGREESS_EVAL_LOG_LEVEL", logging.INFO)
    handler = logging.StreamHandler(stream=target)
    formatter = logging.Formatter(
        fmt="%(asctime)s.%(msecs)03d %(name)-20s %(levelname)-8s %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S")
    handler.setFormatter(formatter)
    for lgr, level in ((logger, log_level),
                       (logger_algorithm, algorithm_log_level),
                       (logger_eval, eval_log_level),
                       (logger_synth, log_level)):
        # Repeated calls replace the handler instead of duplicating output.
        for old in list(lgr.handlers):
            lgr.removeHandler(old)
        lgr.addHandler(handler)
        lgr.setLevel(level)
        lgr.propagate = False
