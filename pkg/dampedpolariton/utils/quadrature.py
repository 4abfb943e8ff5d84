# coding: utf-8

"""
thin wrappers around QUADPACK (scipy.integrate.quad) that turn non-convergence
into QuadratureError instead of a warning
"""

import logging
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy import integrate

from .exceptions import QuadratureError

logger = logging.getLogger(__name__)

# quad(full_output=1) appends a message when ier > 0
_OK_LENGTH = 3


def quad(func: Callable[[float], float], a: float, b: float, *, epsabs: float = 1e-11,
         epsrel: float = 1e-11, limit: int = 400, accept: float = 1e-7, **kwargs) -> Tuple[float, float]:
    """Adaptive quadrature of a real function.

    All keyword arguments of ``scipy.integrate.quad`` (``points``, ``weight``,
    ``wvar``) are passed through. QUADPACK flags such as round-off detection
    are tolerated while the reported error stays below
    ``max(accept, epsrel*|value|)``; beyond that a ``QuadratureError`` is raised.

    Returns
    -------
    value, abserr : float
    """
    # cycle count of the Fourier rule on [a, inf), ignored elsewhere
    kwargs.setdefault("limlst", 200)
    out = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1, **kwargs)
    value, abserr = float(out[0]), float(out[1])
    if not np.isfinite(value):
        raise QuadratureError(f"non-finite quadrature result on [{a}, {b}]", abserr)
    if len(out) > _OK_LENGTH:
        if abserr > max(accept, epsrel * abs(value)):
            raise QuadratureError(f"quadrature on [{a}, {b}] did not converge: {out[3]}", abserr)
        logger.debug("quadrature on [%s, %s] flagged (%s), accepted with error %.2e", a, b, out[3], abserr)
    return value, abserr


def quad_complex(func: Callable[[float], complex], a: float, b: float, **kwargs) -> Tuple[complex, float]:
    """Adaptive quadrature of a complex function, real and imaginary parts separately."""
    re, err_re = quad(lambda x: complex(func(x)).real, a, b, **kwargs)
    im, err_im = quad(lambda x: complex(func(x)).imag, a, b, **kwargs)
    return complex(re, im), float(np.hypot(err_re, err_im))


def quad_log(func: Callable[[float], float], a: float, b: float, *, points: Sequence[float] = (),
             **kwargs) -> Tuple[float, float]:
    """∫_a^b f(x) dx over a wide positive range, integrated in s = ln x."""
    if a <= 0:
        raise ValueError(f"log-variable quadrature needs a > 0, got {a}")
    marks = [float(np.log(p)) for p in points if a < p < b]
    return quad(lambda s: func(np.exp(s)) * np.exp(s), np.log(a), np.log(b), points=marks or None, **kwargs)


def principal_value(func: Callable[[float], float], pole: float, lo: float, hi: float, *,
                    window: float = 0.5, points: Sequence[float] = (), **kwargs) -> Tuple[float, float]:
    """Cauchy principal value of ∫_lo^hi f(x)/(x - pole) dx.

    A window ``pole*(1 ± window)`` around the singular point is handled by
    QUADPACK's Cauchy-weight rule; the outer parts are regular. The right
    outer part is integrated in ln x so that ``hi`` may lie many decades above
    the pole. ``points`` mark narrow features of the outer parts.
    """
    if not lo < pole < hi:
        raise ValueError(f"pole {pole} must lie inside ({lo}, {hi})")
    w_lo = max(lo, pole * (1.0 - window))
    w_hi = min(hi, pole * (1.0 + window))
    total, err = quad(func, w_lo, w_hi, weight="cauchy", wvar=pole, **kwargs)
    if w_lo > lo:
        inner = [p for p in points if lo < p < w_lo]
        v, e = quad(lambda x: func(x) / (x - pole), lo, w_lo, points=inner or None, **kwargs)
        total, err = total + v, err + e
    if w_hi < hi:
        v, e = quad_log(lambda x: func(x) / (x - pole), w_hi, hi, points=points, **kwargs)
        total, err = total + v, err + e
    return total, err
