# coding: utf-8

"""
command-line front end

exit status: 0 success, 1 validation failure, 2 usage or config error,
3 numerical or unexpected error
"""

import logging
import sys
from typing import Optional, Sequence

import tyro
from rich.logging import RichHandler

from .config.argument_config import ArgumentConfig
from .config.run_config import build_run_config
from .polariton_pipeline import PolaritonPipeline
from .utils.exceptions import ConfigError, NumericalError, PolaritonError, ValidationFailure
from .utils.rprint import console

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

logger = logging.getLogger("dampedpolariton")


def setup_logging(verbose: bool = False):
    handler = RichHandler(console=console, show_path=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.INFO)


def run(args: ArgumentConfig) -> int:
    """Execute one analysis; returns the exit status."""
    try:
        cfg = build_run_config(args)
        PolaritonPipeline(cfg).execute()
    except ConfigError as e:
        logger.error("config error: %s", e)
        return EXIT_CONFIG
    except ValidationFailure as e:
        logger.error("validation failed: %s", e)
        return EXIT_VALIDATION
    except NumericalError as e:
        logger.error("numerical error (%s): %s", type(e).__name__, e)
        return EXIT_NUMERICAL
    except PolaritonError as e:
        logger.error("%s", e)
        return EXIT_NUMERICAL
    except Exception:
        logger.exception("unexpected error")
        return EXIT_NUMERICAL
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = tyro.cli(ArgumentConfig, args=argv)
    except SystemExit as e:
        # tyro exits with 2 on bad usage and 0 for --help
        return int(e.code) if isinstance(e.code, int) else EXIT_CONFIG
    setup_logging(args.verbose)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
