# coding: utf-8

"""
Complex polariton dispersion: roots of ω²ε(ω) = k², phase and group
velocities, and continuation of the roots into labelled branches over a k-grid.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import linear_sum_assignment

from ..utils.exceptions import (
    DegenerateRootError,
    DomainError,
    IncompleteBranchSetError,
    RootFindingError,
    UnsupportedConfigurationError,
)
from ..utils.helper import resolve_threads
from .response_models import DielectricModel, RationalModel

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9
# relative size below which a real or imaginary part is snapped to zero
SNAP_RTOL = 1e-8
BRANCH_LABELS = ("lower", "upper", "cutoff", "other")


@dataclass(frozen=True)
class DispersionPolynomial:
    """(ω² - k²)·den(ω) - ω_c²ω²·num(ω), ascending coefficients."""

    coefficients: Tuple[complex, ...]
    k: float
    spurious_roots: Tuple[complex, ...] = ()

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial(np.asarray(self.coefficients, dtype=complex))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def genuine_root_count(self) -> int:
        """Roots that solve ω²ε(ω) = k², i.e. the degree minus the cleared-denominator zeros."""
        return self.degree - len(self.spurious_roots)

    def roots(self) -> np.ndarray:
        # companion-matrix eigenvalues
        return self.polynomial.roots()


@dataclass(frozen=True)
class BranchPoint:
    """Canonical dispersion root (Re ≥ 0, Im ≤ 0) with its velocities."""

    omega: complex
    v_phase: complex
    v_group: complex

    @property
    def self_conjugate(self) -> bool:
        """Purely imaginary roots are their own mirror -Ω*."""
        return self.omega.real == 0.0 and self.omega.imag != 0.0

    @property
    def weight(self) -> float:
        """Weight in branch sums; the mirror root -Ω* of a paired root is folded in."""
        return 0.5 if self.self_conjugate else 1.0

    @property
    def multiplicity(self) -> int:
        """Number of roots of the full polynomial this point stands for."""
        return 1 if self.omega.real == 0.0 else 2


@dataclass
class BranchTrack:
    label: str
    points: List[Optional[BranchPoint]] = field(default_factory=list)

    def _values(self, attr: str) -> np.ndarray:
        return np.array([getattr(p, attr) if p is not None else np.nan + 0j for p in self.points], dtype=complex)

    @property
    def omega(self) -> np.ndarray:
        return self._values("omega")

    @property
    def v_phase(self) -> np.ndarray:
        return self._values("v_phase")

    @property
    def v_group(self) -> np.ndarray:
        return self._values("v_group")


@dataclass
class BranchSet:
    """Dispersion roots over a k-grid, continued into labelled tracks."""

    k_grid: np.ndarray
    tracks: List[BranchTrack]

    def index_of(self, k: float) -> int:
        hits = np.flatnonzero(np.isclose(self.k_grid, k, rtol=1e-12, atol=0.0))
        if hits.size == 0:
            raise DomainError(f"k = {k} is not on the branch-set grid")
        return int(hits[0])

    def points_at(self, k: float) -> List[BranchPoint]:
        i = self.index_of(k)
        return [t.points[i] for t in self.tracks if t.points[i] is not None]

    def track(self, label: str) -> BranchTrack:
        for t in self.tracks:
            if t.label == label:
                return t
        raise KeyError(f"no branch labelled {label!r}")

    @property
    def labels(self) -> List[str]:
        return [t.label for t in self.tracks]

    @property
    def sum_rule_weights(self) -> np.ndarray:
        """Per-track sum-rule weight at each k, 0 where the track has no root."""
        return np.array([[0.0 if p is None else p.weight for p in t.points] for t in self.tracks]).T

    def as_records(self) -> List[Dict[str, Union[float, str]]]:
        rows = []
        for i, k in enumerate(self.k_grid):
            for t in self.tracks:
                p = t.points[i]
                if p is None:
                    continue
                rows.append({
                    "k": float(k), "branch_label": t.label,
                    "re_omega": p.omega.real, "im_omega": p.omega.imag,
                    "re_vp": p.v_phase.real, "im_vp": p.v_phase.imag,
                    "re_vg": p.v_group.real, "im_vg": p.v_group.imag,
                })
        return rows


def require_closed_form(model: DielectricModel) -> RationalModel:
    if not isinstance(model, RationalModel):
        raise UnsupportedConfigurationError(f"dispersion needs a closed-form model, got {model.kind}")
    return model


def _common_roots(num: Polynomial, den: Polynomial) -> Tuple[complex, ...]:
    """Zeros of the numerator that also zero the denominator."""
    if num.degree() < 1:
        return ()
    out = []
    for r in num.roots():
        scale = np.polynomial.polynomial.polyval(abs(r), np.abs(den.coef))
        if abs(den(r)) <= 1e-9 * scale:
            out.append(complex(r))
    return tuple(out)


def build_polynomial(model: DielectricModel, k: float) -> DispersionPolynomial:
    """Clear the denominators of ω²ε(ω) - k²."""
    model = require_closed_form(model)
    if k < 0:
        raise DomainError(f"wavenumber must be non-negative, got {k}")
    num, den = model.numerator, model.denominator
    poly = Polynomial([-k * k, 0.0, 1.0]) * den - model.omega_c ** 2 * Polynomial([0.0, 0.0, 1.0]) * num
    coef = np.asarray(poly.coef, dtype=complex)
    # exact cancellation leaves zero leading terms only for degenerate parameters
    while coef.size > 1 and coef[-1] == 0:
        coef = coef[:-1]
    return DispersionPolynomial(coefficients=tuple(coef), k=float(k), spurious_roots=_common_roots(num, den))


def _dispersion_function(model: RationalModel, k: float, omega: complex) -> Tuple[complex, complex]:
    """f(ω) = ω²ε(ω) - k² and f'(ω)."""
    eps = model.epsilon(omega)
    deps = model.epsilon_derivative(omega)
    return omega * omega * eps - k * k, 2.0 * omega * eps + omega * omega * deps


def _newton(model: RationalModel, k: float, omega: complex, max_iter: int = 60) -> complex:
    w = complex(omega)
    step = 0j
    for _ in range(max_iter):
        f, fp = _dispersion_function(model, k, w)
        if fp == 0:
            break
        step = f / fp
        if not np.isfinite(step):
            break
        w -= step
        if abs(step) <= 4e-16 * max(1.0, abs(w)):
            break
    else:
        if abs(step) > 1e-10 * max(1.0, abs(w)):
            logger.warning("Newton refinement at k=%g did not converge from %s (last step %.3g)",
                           k, omega, abs(step))
    return w


def _residual(model: RationalModel, k: float, omega: complex) -> float:
    f, _ = _dispersion_function(model, k, omega)
    return abs(f) / (k * k + abs(omega) ** 2)


def _snap(omega: complex) -> complex:
    tol = SNAP_RTOL * abs(omega)
    re = 0.0 if abs(omega.real) <= tol else omega.real
    im = 0.0 if abs(omega.imag) <= tol else omega.imag
    return complex(re, im)


def group_velocity(model: DielectricModel, branch_point: Union[BranchPoint, complex], k: float) -> complex:
    """v_g = dΩ/dk = 2k / d/dω[ω²ε(ω)] at the root."""
    model = require_closed_form(model)
    omega = branch_point.omega if isinstance(branch_point, BranchPoint) else complex(branch_point)
    _, fp = _dispersion_function(model, k, omega)
    if abs(fp) * max(abs(omega), 1e-300) <= 1e-10 * (k * k + abs(omega) ** 2):
        raise DegenerateRootError(f"multiple dispersion root at ω = {omega:.6g}, k = {k:.6g}")
    return 2.0 * k / fp


def dispersion_roots(model: DielectricModel, k: float) -> List[BranchPoint]:
    """All canonical roots of ω²ε(ω) = k² at one wavenumber.

    Roots of the cleared polynomial are refined by Newton iteration on the
    rational form; the cleared denominator's spurious zeros are dropped.
    Canonical representatives have Re ≥ 0 and Im ≤ 0 (the mirror -Ω* of each
    is implied); sorted by |Ω|.
    """
    model = require_closed_form(model)
    if not k > 0:
        raise DomainError(f"dispersion roots need k > 0, got {k}")
    poly = build_polynomial(model, k)
    raw = poly.roots()

    genuine = [r for r in raw
               if not any(abs(r - s) <= 1e-6 * max(1.0, abs(s)) for s in poly.spurious_roots)]
    refined = [_snap(_newton(model, k, r)) for r in genuine]
    residuals = [_residual(model, k, w) for w in refined]
    if any(not np.isfinite(r) or r >= RESIDUAL_TOL for r in residuals):
        raise RootFindingError(f"dispersion roots at k = {k:.6g} failed the residual test", residuals)

    canonical: List[complex] = []
    for w in refined:
        if w.imag > 0 or w.real < 0:
            continue
        if any(abs(w - c) <= 1e-7 * max(1.0, abs(c)) for c in canonical):
            continue  # Newton from two nearby raw roots landed on one root
        canonical.append(w)

    count = sum(2 if w.real > 0 else 1 for w in canonical)
    if count != poly.genuine_root_count:
        raise IncompleteBranchSetError(
            f"found {count} of {poly.genuine_root_count} genuine dispersion roots at k = {k:.6g}")

    canonical.sort(key=lambda w: (abs(w), w.real))
    return [BranchPoint(omega=w, v_phase=w / k, v_group=group_velocity(model, w, k)) for w in canonical]


def _initial_labels(points: Sequence[BranchPoint], omega_c: float) -> List[str]:
    """Labels at the smallest k from the branch asymptotics.

    ``lower`` is the paired root nearest 0, ``upper`` the paired root nearest
    √(ω₀² + ω_c²), ``cutoff`` the largest remaining root, everything else ``other``.
    """
    labels = ["other"] * len(points)
    free = list(range(len(points)))
    paired = [i for i in free if points[i].omega.real > 0]
    targets = (("lower", 0.0), ("upper", math.sqrt(1.0 + omega_c ** 2)))
    for name, target in targets:
        pool = [i for i in paired if i in free] or free
        if not pool:
            break
        i = min(pool, key=lambda j: abs(points[j].omega - target))
        labels[i] = name
        free.remove(i)
    if free:
        labels[max(free, key=lambda j: abs(points[j].omega))] = "cutoff"
    return labels


def trace_branches(model: DielectricModel, k_grid: Iterable[float], *, threads: int = 1,
                   jump_threshold: Optional[float] = None) -> BranchSet:
    """Roots over a k-grid, continued by nearest matching into labelled tracks.

    Labels are assigned at the first k from the branch asymptotics: ``lower``
    starts near 0, ``upper`` near √(ω₀² + ω_c²), ``cutoff`` is the largest
    remaining root and everything else is ``other``. Steps larger than
    ``jump_threshold`` (default: four grid spacings) are logged as possible
    branch crossings.
    """
    model = require_closed_form(model)
    ks = np.asarray(list(k_grid), dtype=float)
    if ks.ndim != 1 or ks.size < 1 or np.any(ks <= 0) or np.any(np.diff(ks) <= 0):
        raise DomainError("k_grid must be positive and strictly increasing")
    if jump_threshold is None:
        jump_threshold = 4.0 * float(np.max(np.diff(ks))) if ks.size > 1 else np.inf

    n_workers = resolve_threads(threads)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            per_k = list(pool.map(lambda k: dispersion_roots(model, k), ks))
    else:
        per_k = [dispersion_roots(model, k) for k in ks]

    first = per_k[0]
    tracks = [BranchTrack(label=lab, points=[p]) for lab, p in zip(_initial_labels(first, model.omega_c), first)]

    for i in range(1, ks.size):
        current = per_k[i]
        alive = [t for t in tracks if t.points[-1] is not None]
        cost = np.array([[abs(t.points[-1].omega - p.omega) for p in current] for t in alive]).reshape(len(alive), len(current))
        rows, cols = linear_sum_assignment(cost) if cost.size else ([], [])
        matched = {}
        for r, c in zip(rows, cols):
            matched[id(alive[r])] = current[c]
            if cost[r, c] > jump_threshold:
                logger.warning("possible branch crossing near k = %.6g: %s branch jumped by %.3g",
                               ks[i], alive[r].label, cost[r, c])
        for t in tracks:
            t.points.append(matched.get(id(t)))
        for c in set(range(len(current))) - set(cols):
            logger.warning("new dispersion root appears at k = %.6g (ω = %.6g)", ks[i], current[c].omega)
            tracks.append(BranchTrack(label="other", points=[None] * i + [current[c]]))

    return BranchSet(k_grid=ks, tracks=tracks)


def polariton_group_velocity_sum(branchset: BranchSet) -> np.ndarray:
    """Im(v_g,upper + v_g,lower) along the grid."""
    return np.imag(branchset.track("upper").v_group + branchset.track("lower").v_group)
