# coding: utf-8

"""
small helpers: directories, sampling grids and worker counts
"""

import os
import os.path as osp
from typing import Literal

import numpy as np

from .exceptions import ConfigError


def mkdir(d, log=False):
    # return self-assigned `d`, for one line code
    if d and not osp.exists(d):
        os.makedirs(d, exist_ok=True)
        if log:
            print(f"Make dir: {d}")
    return d


def make_grid(lo: float, hi: float, count: int, spacing: Literal["linear", "log"] = "linear") -> np.ndarray:
    """Sampling grid with `count` points from `lo` to `hi` inclusive.

    Parameters
    ----------
    lo, hi : float
        Grid end points, ``lo < hi``; both positive for log spacing.
    count : int
        Number of points, at least 2.
    spacing : {"linear", "log"}
        Even spacing in the value or in its logarithm.

    Returns
    -------
    np.ndarray
        Strictly increasing float array.
    """
    if count < 2:
        raise ConfigError(f"grid needs at least 2 points, got {count}")
    if not lo < hi:
        raise ConfigError(f"grid bounds must satisfy min < max, got [{lo}, {hi}]")
    if spacing == "linear":
        return np.linspace(lo, hi, count)
    if spacing == "log":
        if lo <= 0:
            raise ConfigError(f"log grid needs a positive lower bound, got {lo}")
        return np.geomspace(lo, hi, count)
    raise ConfigError(f"Unknown grid spacing: {spacing}")


def resolve_threads(threads) -> int:
    """Worker count; `None` or values below 1 fall back to a single worker."""
    if threads is None:
        return 1
    return max(1, int(threads))
