# coding: utf-8

"""
Time-dependent spontaneous emission rate of a guest atom in an absorbing
dielectric, Γ(Δt)/Γ₀ = (1/π) Re ∫₀^∞ (ω/ω_A)³ n(ω) C(ω) sin[(ω - ω_A)Δt]/(ω - ω_A) dω,
with the convergence factor C(ω) = Ω⁴/(Ω⁴ + ω⁴).

Three evaluations:

* ``direct``: oscillatory quadrature on the real axis (QUADPACK Fourier rules);
* ``contour``: the sine is split into exponentials and both contours are folded
  onto the imaginary axes, leaving the pole at ω_A, the branch cuts of
  n(ω) = √ε(ω) below ω₁ and ω₂, and the poles of C;
* ``asymptotic``: the leading large-Δt term of the ω₁ branch cut.
"""

from __future__ import annotations

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Literal, Sequence, Tuple

import numpy as np
from scipy import optimize, special

from ..utils.exceptions import ConfigError, DomainError, UnsupportedConfigurationError
from ..utils.helper import resolve_threads
from ..utils.quadrature import quad, quad_complex
from .response_models import (
    DielectricModel,
    LorentzCutoffModel,
    RationalModel,
    epsilon,
    index_branch,
    refractive_index,
    resonance_frequency,
)

logger = logging.getLogger(__name__)

Method = Literal["direct", "contour", "asymptotic"]
METHODS = ("direct", "contour", "asymptotic")

_EIGHTH = cmath.exp(0.25j * math.pi)
# Laplace integrands are cut off where e^{-x Δt} < e^{-_DECAY}
_DECAY = 60.0


@dataclass(frozen=True)
class EmissionParams:
    omega_A: float                 # atomic transition frequency, units of ω₀
    model: DielectricModel         # medium
    conv_cutoff: float = 50.0      # Ω of the convergence factor, Ω ≫ ω_A
    t0: float = 0.0                # excitation time

    def __post_init__(self):
        if not self.omega_A > 0:
            raise ConfigError(f"omega_A must be positive, got {self.omega_A}")
        if not self.conv_cutoff > self.omega_A:
            raise ConfigError(f"conv_cutoff {self.conv_cutoff} must exceed omega_A {self.omega_A}")
        if self.conv_cutoff < 10.0 * self.omega_A:
            logger.warning("conv_cutoff = %g is not much larger than omega_A = %g", self.conv_cutoff, self.omega_A)

    def convergence(self, omega):
        big4 = self.conv_cutoff ** 4
        return big4 / (big4 + omega ** 4)

    @property
    def equilibrium(self) -> float:
        """Γ(∞)/Γ₀ = Re n(ω_A)."""
        return float(np.real(refractive_index(self.model, self.omega_A)))


@dataclass(frozen=True)
class EmissionCurve:
    delta_t: np.ndarray
    gamma_over_gamma0: np.ndarray
    method: str
    equilibrium: float             # Re n(ω_A)

    @property
    def normalized(self) -> np.ndarray:
        """Γ/[Γ₀ Re n(ω_A)]."""
        return self.gamma_over_gamma0 / self.equilibrium

    def as_records(self):
        return [{"delta_t": float(t), "gamma_over_gamma0": float(g)}
                for t, g in zip(self.delta_t, self.gamma_over_gamma0)]


def _lorentz(params: EmissionParams) -> LorentzCutoffModel:
    model = params.model
    if not isinstance(model, LorentzCutoffModel):
        raise UnsupportedConfigurationError(f"branch-cut analysis needs the Lorentz model, got {model.kind}")
    if not model.kappa0 < 1.0:
        raise UnsupportedConfigurationError(f"overdamped resonance (kappa0 = {model.kappa0}) has no cut at ω₁")
    return model


def branch_points(params: EmissionParams) -> Tuple[complex, complex]:
    """ω₁ = √(ω₀² - κ₀²) - iκ₀ (pole of ε) and ω₂ = √(ω₀² + ω_c² - κ₀²) - iκ₀ (zero of ε)."""
    model = _lorentz(params)
    k0, wc = model.kappa0, model.omega_c
    return complex(math.sqrt(1.0 - k0 * k0), -k0), complex(math.sqrt(1.0 + wc * wc - k0 * k0), -k0)


def _sqrt_factor(z: complex, a: complex) -> complex:
    """√(z - a) with its cut running vertically down from a, positive for z - a > 0."""
    return _EIGHTH * cmath.sqrt(-1j * (z - a))


class _ContourIndex:
    """n(ω) of the Lorentz form continued off the real axis, cuts pointing down.

    ε = (ω - ω₂)(ω + ω₂*)/((ω - ω₁)(ω + ω₁*)), so n is a ratio of four square
    roots. On the right bank of the cut below a, at ω = a - iλ, the factor of
    a itself equals e^{-iπ/4}√λ; ``without_w1``/``without_w2`` leave that
    factor out so the caller can set it explicitly.
    """

    def __init__(self, w1: complex, w2: complex):
        self.w1, self.w2 = w1, w2
        self.w1m, self.w2m = -w1.conjugate(), -w2.conjugate()

    def __call__(self, z: complex) -> complex:
        return (_sqrt_factor(z, self.w2) * _sqrt_factor(z, self.w2m)
                / (_sqrt_factor(z, self.w1) * _sqrt_factor(z, self.w1m)))

    def without_w1(self, z: complex) -> complex:
        """n(z)·s_{ω₁}(z)."""
        return _sqrt_factor(z, self.w2) * _sqrt_factor(z, self.w2m) / _sqrt_factor(z, self.w1m)

    def without_w2(self, z: complex) -> complex:
        """n(z)/s_{ω₂}(z)."""
        return _sqrt_factor(z, self.w2m) / (_sqrt_factor(z, self.w1) * _sqrt_factor(z, self.w1m))


def _phi(params: EmissionParams, index: Callable[[complex], complex], z: complex) -> complex:
    """(z/ω_A)³ n(z) C(z)/(z - ω_A)."""
    wa = params.omega_A
    return (z / wa) ** 3 * index(z) * params.convergence(z) / (z - wa)


def _axis_terms(params: EmissionParams, index: Callable[[complex], complex], dt: float) -> float:
    """Contributions of both folded contours along the imaginary axis."""
    wa = params.omega_A
    y_max = _DECAY / dt
    up, _ = quad_complex(lambda y: _phi(params, index, 1j * y) * math.exp(-y * dt), 0.0, y_max)
    down, _ = quad_complex(lambda y: _phi(params, index, -1j * y) * math.exp(-y * dt), 0.0, y_max)
    return float(np.real(0.5 * (cmath.exp(-1j * wa * dt) * up + cmath.exp(1j * wa * dt) * down))) / math.pi


def _convergence_pole_terms(params: EmissionParams, index: Callable[[complex], complex], dt: float) -> float:
    """Residues of C at Ωe^{±iπ/4}; they die out as e^{-ΩΔt/√2}."""
    wa, big = params.omega_A, params.conv_cutoff
    total = 0.0
    for sign in (1.0, -1.0):
        p = big * cmath.exp(sign * 0.25j * math.pi)
        r = big ** 4 * index(p) * cmath.exp(sign * 1j * (p - wa) * dt) / (4.0 * wa ** 3 * (p - wa))
        total += r.real
    return total


def _free_space(params: EmissionParams, dt: float) -> float:
    """The n ≡ 1 part of Γ/Γ₀, evaluated on the imaginary axes."""
    one = lambda z: 1.0  # noqa: E731
    return (float(params.convergence(params.omega_A))
            + _axis_terms(params, one, dt) + _convergence_pole_terms(params, one, dt))


def _feature_frequencies(params: EmissionParams) -> list:
    model = params.model
    marks = [params.conv_cutoff, 2.0 * params.conv_cutoff]
    if isinstance(model, RationalModel) and model.omega_c > 0:
        res = resonance_frequency(model)
        marks += [res - 0.1, res - 0.02, res, res + 0.02, res + 0.1, math.sqrt(res * res + model.omega_c ** 2)]
        if math.isfinite(model.cutoff_scale):
            marks.append(model.cutoff_scale)
    return marks


def gamma_direct(params: EmissionParams, delta_t: float, *, epsabs: float = 1e-10) -> float:
    """Γ/Γ₀ by oscillatory quadrature on the real frequency axis.

    The free-space part (n ≡ 1) is taken from its exact imaginary-axis form;
    the medium part h(x) = Re[(ω/ω_A)³(n - 1)C] with x = ω - ω_A is integrated as

        ∫ (h(x) - h(0))/x sin(xΔt) dx  +  h(0)[Si(LΔt) + Si(ω_AΔt)]  +  ∫_L^∞ h(x)/x sin(xΔt) dx

    with QUADPACK's Fourier-weight rules on pieces split at the resonances.
    """
    dt = float(delta_t)
    if dt < 0:
        raise DomainError(f"delta_t must be non-negative, got {delta_t}")
    if dt == 0:
        return 0.0
    wa, model = params.omega_A, params.model

    def h(x: float) -> float:
        w = x + wa
        if w <= 0:
            return 0.0
        n = index_branch(epsilon(model, w))
        return float(np.real((w / wa) ** 3 * (n - 1.0) * params.convergence(w)))

    h0 = h(0.0)
    step = 1e-6

    def g(x: float) -> float:
        if abs(x) < 1e-9:
            return (h(step) - h(-step)) / (2.0 * step)
        return (h(x) - h0) / x

    big_l = 8.0 * params.conv_cutoff
    cuts = sorted({-wa, 0.0, big_l} | {m - wa for m in _feature_frequencies(params) if -wa < m - wa < big_l})
    body = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        v, _ = quad(g, a, b, weight="sin", wvar=dt, epsabs=epsabs, epsrel=1e-10)
        body += v
    si_l, _ = special.sici(big_l * dt)
    si_a, _ = special.sici(wa * dt)
    tail, _ = quad(lambda x: h(x) / x, big_l, np.inf, weight="sin", wvar=dt, epsabs=epsabs)
    medium = (body + h0 * (si_l + si_a) + tail) / math.pi
    return _free_space(params, dt) + medium


def j_integral(params: EmissionParams, delta_t: float) -> complex:
    """J(Δt) of the ω₁ branch cut, convergence factor included.

    J = ∫₀^∞ e^{-λΔt} ω³ C(ω)/(√λ (ω - ω_A)) · R(ω) dλ on ω = ω₁ - iλ, where
    R is n(ω)·√(ω - ω₁) continued from λ → 0⁺ (positive real at λ = 0). With
    λ = u² the endpoint singularity disappears.
    """
    dt = float(delta_t)
    if not dt > 0:
        raise DomainError(f"J needs delta_t > 0, got {delta_t}")
    w1, w2 = branch_points(params)
    idx = _ContourIndex(w1, w2)
    wa = params.omega_A

    def integrand(u: float) -> complex:
        z = w1 - 1j * u * u
        return z ** 3 * params.convergence(z) * idx.without_w1(z) / (z - wa) * math.exp(-u * u * dt)

    u_max = math.sqrt(_DECAY / dt)
    u_mark = math.sqrt(abs(w1 - wa) + abs(w1.imag))
    value, _ = quad_complex(integrand, 0.0, u_max, points=[u_mark] if u_mark < u_max else None)
    return -2j * value


def j_leading(params: EmissionParams, delta_t: float) -> complex:
    """First term of the large-Δt expansion of J."""
    w1, w2 = branch_points(params)
    wc = params.model.omega_c
    s1 = w1.real
    return (w1 ** 3 * params.convergence(w1) / (w1 - params.omega_A)
            * wc / math.sqrt(2.0 * s1) * math.sqrt(math.pi / delta_t))


def _cut_w2(params: EmissionParams, idx: _ContourIndex, dt: float) -> float:
    """Branch cut below ω₂, where n vanishes like √(ω - ω₂)."""
    w2, wa = idx.w2, params.omega_A

    def integrand(u: float) -> complex:
        z = w2 - 1j * u * u
        n_right = cmath.exp(-0.25j * math.pi) * u * idx.without_w2(z)
        return (z / wa) ** 3 * n_right * params.convergence(z) / (z - wa) * 2.0 * u * math.exp(-u * u * dt)

    value, _ = quad_complex(integrand, 0.0, math.sqrt(_DECAY / dt))
    return float(np.real(cmath.exp(-1j * (w2 - wa) * dt) * value)) / math.pi


def gamma_contour(params: EmissionParams, delta_t: float) -> float:
    """Γ/Γ₀ from the pole at ω_A, both branch cuts, the imaginary axes and the poles of C."""
    model = _lorentz(params)
    if model.finite_cutoff:
        raise UnsupportedConfigurationError("contour method needs the Lorentz model without cutoff")
    dt = float(delta_t)
    if dt < 0:
        raise DomainError(f"delta_t must be non-negative, got {delta_t}")
    if dt == 0:
        return 0.0
    wa = params.omega_A
    w1, w2 = branch_points(params)
    idx = _ContourIndex(w1, w2)

    pole = float(np.real(refractive_index(model, wa) * params.convergence(wa)))
    total = pole + _axis_terms(params, idx, dt) + _convergence_pole_terms(params, idx, dt)
    if model.omega_c > 0:
        phase = cmath.exp(-0.25j * math.pi - 1j * (w1 - wa) * dt)
        total += -float(np.real(phase * j_integral(params, dt))) / (math.pi * wa ** 3)
        total += _cut_w2(params, idx, dt)
    return total


def _asymptotic_amplitude(params: EmissionParams) -> complex:
    model = _lorentz(params)
    k0, wa = model.kappa0, params.omega_A
    s1 = math.sqrt(1.0 - k0 * k0)
    return model.omega_c * s1 ** 2.5 / (math.sqrt(2.0 * math.pi) * wa ** 3 * complex(s1 - wa, -k0))


def gamma_asymptotic(params: EmissionParams, delta_t: float) -> float:
    """Re[n(ω_A) - A e^{-iπ/4 - κ₀Δt - i(√(ω₀² - κ₀²) - ω_A)Δt}/√Δt]."""
    dt = float(delta_t)
    if not dt > 0:
        raise DomainError(f"asymptotic form needs delta_t > 0, got {delta_t}")
    model = _lorentz(params)
    k0, wa = model.kappa0, params.omega_A
    s1 = math.sqrt(1.0 - k0 * k0)
    transient = (_asymptotic_amplitude(params)
                 * cmath.exp(-0.25j * math.pi - k0 * dt - 1j * (s1 - wa) * dt) / math.sqrt(dt))
    return float(np.real(refractive_index(model, wa) - transient))


def equilibration_time(params: EmissionParams, fraction: float = 0.05) -> float:
    """Δt after which the asymptotic transient envelope stays below fraction·Re n(ω_A)."""
    model = _lorentz(params)
    if not 0 < fraction < 1:
        raise DomainError(f"fraction must lie in (0, 1), got {fraction}")
    amp = abs(_asymptotic_amplitude(params))
    level = fraction * params.equilibrium
    if amp == 0 or model.kappa0 == 0:
        return 0.0 if amp == 0 else math.inf
    # envelope amp·e^{-κ₀t}/√t decreases monotonically
    f = lambda t: math.log(amp) - model.kappa0 * t - 0.5 * math.log(t) - math.log(level)  # noqa: E731
    hi = 1.0 / model.kappa0
    while f(hi) > 0:
        hi *= 2.0
    lo = 1e-12
    if f(lo) <= 0:
        return lo
    return float(optimize.brentq(f, lo, hi, xtol=1e-12))


_DISPATCH = {"direct": gamma_direct, "contour": gamma_contour, "asymptotic": gamma_asymptotic}


def emission_curve(params: EmissionParams, t_grid: Sequence[float], method: Method = "direct",
                   *, threads: int = 1) -> EmissionCurve:
    """Γ/Γ₀ over observation times t, reported against Δt = t - t₀.

    Γ vanishes at Δt = 0 for every method.
    """
    if method not in _DISPATCH:
        raise ConfigError(f"Unknown emission method: {method}")
    ts = np.asarray(list(t_grid), dtype=float)
    if ts.ndim != 1 or np.any(ts < 0) or np.any(np.diff(ts) <= 0):
        raise DomainError("t_grid must be non-negative and strictly increasing")
    dts = ts - params.t0
    if np.any(dts < 0):
        raise DomainError(f"t_grid starts before the excitation time t0 = {params.t0}")
    fn = _DISPATCH[method]

    def one(t: float) -> float:
        return 0.0 if t == 0 else fn(params, t)

    n_workers = resolve_threads(threads)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            values = list(pool.map(one, dts))
    else:
        values = [one(t) for t in dts]
    return EmissionCurve(delta_t=dts, gamma_over_gamma0=np.array(values), method=method,
                         equilibrium=params.equilibrium)


def refractive_index_curve(model: DielectricModel, omega_grid: Sequence[float]) -> np.ndarray:
    """n(ω) sampled on a positive frequency grid."""
    return np.asarray(refractive_index(model, np.asarray(omega_grid, dtype=float)), dtype=complex)
