# coding: utf-8

"""
command-line arguments; every flag except the analysis overrides the recipe
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Literal, Optional

import tyro
from typing_extensions import Annotated

from .base_config import PrintableConfig

logger = logging.getLogger(__name__)

Analysis = Literal["dispersion", "sumrules", "coeffs", "emission", "validate", "index"]


def threads_from_env() -> int:
    raw = os.environ.get("POLARITON_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning("ignoring POLARITON_THREADS=%r, not an integer", raw)
        return 1


@dataclass(repr=False)  # use repr from PrintableConfig
class ArgumentConfig(PrintableConfig):
    ########## analysis ##########
    analysis: tyro.conf.Positional[Analysis]  # which analysis to run
    config: Annotated[Optional[str], tyro.conf.arg(aliases=["-c"])] = None  # recipe file, or the name of a shipped recipe (fig1, fig4, ...)
    ##############################

    ########## output ##########
    out: Annotated[Optional[str], tyro.conf.arg(aliases=["-o"])] = None  # output file; standard output if unset
    format: Optional[Literal["csv", "json"]] = None
    ############################

    ########## numerics ##########
    tolerance: Optional[float] = None  # pass threshold of the validate suites
    threads: int = field(default_factory=threads_from_env)  # worker count, default from POLARITON_THREADS
    method: Optional[Literal["direct", "contour", "asymptotic"]] = None  # emission evaluation
    verbose: Annotated[bool, tyro.conf.arg(aliases=["-v"])] = False  # debug logging
    ##############################
