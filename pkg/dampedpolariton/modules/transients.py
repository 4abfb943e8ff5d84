# coding: utf-8

"""
Transient coefficient matrix M(t) over the fields (E, A, X, P) and the
commutator identity that ties it to the dielectric function.

Each entry is a residue sum over the canonical dispersion roots,
M_mn(t) = Σ_j w_j Re/Im[ polynomial in v_p,j ] · v_g,j · e^{-iΩ_j t},
in the dimensionless convention ε₀ = α = c = 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..utils.exceptions import DegenerateRootError, DomainError, UnsupportedConfigurationError
from ..utils.quadrature import quad
from .dispersion import BranchPoint, dispersion_roots, require_closed_form
from .response_models import DielectricModel, epsilon

logger = logging.getLogger(__name__)

FIELDS = ("E", "A", "X", "P")


@dataclass(frozen=True)
class CoefficientMatrix:
    """Fields at time t in terms of the fields at t = 0: F_m(t) = Σ_n m[m, n] F_n(0)."""

    t: float
    k: float
    m: np.ndarray

    def entry(self, row: str, col: str) -> float:
        return float(self.m[FIELDS.index(row), FIELDS.index(col)])

    def as_record(self) -> dict:
        out = {"k": self.k, "t": self.t}
        for i, r in enumerate(FIELDS):
            for j, c in enumerate(FIELDS):
                out[f"M_{r}{c}"] = float(self.m[i, j])
        return out


def _roots(model: DielectricModel, k: float, points: Optional[Sequence[BranchPoint]]) -> List[BranchPoint]:
    if points is not None:
        return list(points)
    try:
        return dispersion_roots(model, k)
    except DegenerateRootError as e:
        raise UnsupportedConfigurationError(f"coefficient matrix needs simple roots: {e}") from e


def coefficient_matrix(model: DielectricModel, k: float, t: float,
                       points: Optional[Sequence[BranchPoint]] = None) -> CoefficientMatrix:
    """M_mn(t) from the canonical roots at k; symmetric partners are aliased."""
    model = require_closed_form(model)
    wc2 = model.omega_c ** 2
    if wc2 == 0:
        raise DomainError("the coefficient matrix needs a coupled medium (omega_c > 0)")
    pts = _roots(model, k, points)
    vp = np.array([p.v_phase for p in pts], dtype=complex)
    vg = np.array([p.v_group for p in pts], dtype=complex)
    w = np.array([p.weight for p in pts], dtype=float)
    e = np.exp(-1j * np.array([p.omega for p in pts], dtype=complex) * t)

    q = 1.0 - vp ** 2 + wc2 / k ** 2
    d = vp - 1.0 / vp

    def re(x):
        return float(np.sum(w * np.real(x * vg * e)))

    def im(x):
        return float(np.sum(w * np.imag(x * vg * e)))

    ee = re(vp)
    ea = -k * im(vp ** 2)
    ex = -(k ** 2 / wc2) * re(vp * q)
    ep = k * im(1.0 - vp ** 2)
    ae = im(1.0) / k
    ax = -(k / wc2) * im(q)
    ap = re(d)
    xx = -(k ** 2 / wc2) * re(q * d)
    xp = -k * im(d ** 2)
    px = (k ** 3 / wc2 ** 2) * im(q ** 2)

    m = np.array([
        [ee, ea, ex, ep],
        [ae, ee, ax, ap],
        [ap, ep, xx, xp],
        [ax, ex, px, xx],
    ])
    return CoefficientMatrix(t=float(t), k=float(k), m=m)


def field_commutator(model: DielectricModel, k: float, t: float,
                     points: Optional[Sequence[BranchPoint]] = None) -> float:
    """[E(t), E(0)] in units of -iℏ/ε₀, which reduces to M_EA(t)."""
    return coefficient_matrix(model, k, t, points).entry("E", "A")


def decay_envelope(model: DielectricModel, k: float, t: float,
                   points: Optional[Sequence[BranchPoint]] = None) -> float:
    """Σ_j w_j |v_p,j v_g,j| e^{Im Ω_j t}, an upper bound for |M_EE(t)|."""
    pts = _roots(model, k, points)
    return float(sum(p.weight * abs(p.v_phase * p.v_group) * math.exp(p.omega.imag * t) for p in pts))


def commutator_residue_sum(model: DielectricModel, k: float,
                           points: Optional[Sequence[BranchPoint]] = None) -> float:
    """Σ_j w_j Re[ε(-Ω_j) v_p,j v_g,j] with ε continued into the upper half plane."""
    pts = _roots(model, k, points)
    return float(sum(p.weight * np.real(epsilon(model, -p.omega) * p.v_phase * p.v_group) for p in pts))


def commutator_integral(model: DielectricModel, k: float,
                        points: Optional[Sequence[BranchPoint]] = None) -> float:
    """(2/π)∫₀^∞ ε_r ε_i ω³/|εω² - k²|² dω by adaptive quadrature plus a tail."""
    model = require_closed_form(model)
    if not model.is_lossy:
        raise DomainError(f"the commutator integral needs a lossy model, got {model.kind}")
    pts = _roots(model, k, points)

    def integrand(x: float) -> float:
        eps = model.epsilon(x)
        return eps.real * eps.imag * x ** 3 / abs(eps * x * x - k * k) ** 2

    scale = max([abs(p.omega) for p in pts] + [math.sqrt(1.0 + model.omega_c ** 2)])
    if math.isfinite(model.cutoff_scale):
        scale = max(scale, model.cutoff_scale)
    hi = 10.0 * scale
    # polariton peaks have width |Im Ω|
    marks = {scale}
    for p in pts:
        if p.omega.real > 0:
            for s in (0.0, 3.0, 10.0, 30.0):
                for sign in (-1.0, 1.0):
                    x = p.omega.real + sign * s * abs(p.omega.imag)
                    if 0 < x < hi:
                        marks.add(x)
    body, _ = quad(integrand, 0.0, hi, points=sorted(marks), limit=2000, epsabs=1e-12, epsrel=1e-12)
    tail, _ = quad(integrand, hi, np.inf, epsabs=1e-13, epsrel=1e-12)
    return 2.0 / math.pi * (body + tail)
