# coding: utf-8

"""
Dielectric models of the damped-polariton theory.

The closed-form models are rational in ω: χ(ω) = -ω_c²·num(ω)/den(ω), with
numerator and denominator held as numpy Polynomials (ascending powers). The
same algebraic expression is used for complex ω, which gives the analytic
continuation needed by the dispersion and emission modules. A tabulated bath
coupling V²(ω) yields ε(ω) through a principal-value quadrature instead.

Units: ω₀ = c = 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy import interpolate, optimize

from ..utils.exceptions import (
    ConfigError,
    DivergenceError,
    DomainError,
    SingularityError,
    UnsupportedConfigurationError,
)
from ..utils.quadrature import principal_value, quad, quad_log

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
INFINITE_CUTOFF = math.inf

# |den(ω)| below this fraction of Σ|c_k||ω|^k counts as a pole
_POLE_RTOL = 1e-14


class RationalModel:
    """Shared behaviour of the closed-form models."""

    kind: ClassVar[str] = "rational"
    omega_c: float

    @cached_property
    def numerator(self) -> Polynomial:
        raise NotImplementedError

    @cached_property
    def denominator(self) -> Polynomial:
        raise NotImplementedError

    @property
    def is_lossy(self) -> bool:
        return False

    @property
    def cutoff_scale(self) -> float:
        """Frequency scale of the bath cutoff, infinite when there is none."""
        return INFINITE_CUTOFF

    def epsilon(self, omega):
        w = np.asarray(omega, dtype=complex)
        den = self.denominator(w)
        scale = np.polynomial.polynomial.polyval(np.abs(w), np.abs(self.denominator.coef))
        if np.any(np.abs(den) <= _POLE_RTOL * scale):
            raise SingularityError(f"{self.kind} dielectric function evaluated at a pole (ω = {omega})")
        out = 1.0 - self.omega_c ** 2 * self.numerator(w) / den
        return complex(out) if out.ndim == 0 else out

    def epsilon_derivative(self, omega):
        """dε/dω of the rational form."""
        w = np.asarray(omega, dtype=complex)
        num, den = self.numerator, self.denominator
        d = den(w)
        out = -self.omega_c ** 2 * (num.deriv()(w) * d - num(w) * den.deriv()(w)) / d ** 2
        return complex(out) if out.ndim == 0 else out

    @property
    def static_epsilon(self) -> float:
        return float(np.real(self.epsilon(0.0)))


@dataclass(frozen=True)
class LosslessModel(RationalModel):
    """ε(ω) = 1 - ω_c²/(ω² - ω₀²): the one-resonance model without damping."""

    omega_c: float
    kind: ClassVar[str] = "lossless"

    def __post_init__(self):
        if not self.omega_c > 0:
            raise ConfigError(f"omega_c must be positive, got {self.omega_c}")

    @cached_property
    def numerator(self) -> Polynomial:
        return Polynomial([1.0])

    @cached_property
    def denominator(self) -> Polynomial:
        return Polynomial([-1.0, 0.0, 1.0])


@dataclass(frozen=True)
class LorentzCutoffModel(RationalModel):
    """Lorentz oscillator from a bath coupling with a Lorentzian cutoff.

    ε(ω) = 1 - ω_c²/(ω² - ω₀² - 2Ω[κ₀ - κ(ω)] + 2iωκ(ω)),  κ(ω) = κ₀Ω²/(Ω² + ω²).
    With an infinite cutoff this is the plain Lorentz form with ω_res = ω₀.
    ``omega_c = 0`` is accepted and describes vacuum.
    """

    omega_c: float
    kappa0: float
    cutoff: float = INFINITE_CUTOFF
    kind: ClassVar[str] = "lorentz"

    def __post_init__(self):
        if not self.omega_c >= 0:
            raise ConfigError(f"omega_c must be non-negative, got {self.omega_c}")
        if not self.kappa0 >= 0:
            raise ConfigError(f"kappa0 must be non-negative, got {self.kappa0}")
        if not self.cutoff > 1.0:
            raise ConfigError(f"cutoff must exceed omega0 = 1, got {self.cutoff}")

    @property
    def finite_cutoff(self) -> bool:
        return math.isfinite(self.cutoff)

    @property
    def is_lossy(self) -> bool:
        return self.kappa0 > 0 and self.omega_c > 0

    @property
    def cutoff_scale(self) -> float:
        return self.cutoff

    @cached_property
    def numerator(self) -> Polynomial:
        if not self.finite_cutoff:
            return Polynomial([1.0])
        return Polynomial([self.cutoff ** 2, 0.0, 1.0])

    @cached_property
    def denominator(self) -> Polynomial:
        k0 = self.kappa0
        if not self.finite_cutoff:
            return Polynomial([-1.0, 2j * k0, 1.0])
        big = self.cutoff
        return (Polynomial([-1.0, 0.0, 1.0]) * Polynomial([big ** 2, 0.0, 1.0])
                + Polynomial([0.0, 2j * k0 * big ** 2, -2.0 * big * k0]))

    def kappa(self, omega):
        """κ(ω) = κ₀Ω²/(Ω² + ω²)."""
        if not self.finite_cutoff:
            return self.kappa0 * np.ones_like(np.asarray(omega, dtype=float))[()]
        big2 = self.cutoff ** 2
        return self.kappa0 * big2 / (big2 + np.asarray(omega) ** 2)


@dataclass(frozen=True)
class PointScatterCutoffModel(RationalModel):
    """Radiation-damped point scatterers with a quartic coupling cutoff.

    Γ_e = 3κ (c = ω₀ = 1) and Γ(ω) = Γ_eΩ⁴/(Ω⁴ + ω⁴); the damping term is
    (2/3)iΓ(ω)ω³.
    """

    omega_c: float
    kappa: float
    cutoff: float
    kind: ClassVar[str] = "point"

    def __post_init__(self):
        if not self.omega_c > 0:
            raise ConfigError(f"omega_c must be positive, got {self.omega_c}")
        if not self.kappa >= 0:
            raise ConfigError(f"kappa must be non-negative, got {self.kappa}")
        if not (self.cutoff > 1.0 and math.isfinite(self.cutoff)):
            raise ConfigError(f"cutoff must be finite and exceed omega0 = 1, got {self.cutoff}")

    @property
    def gamma_e(self) -> float:
        return 3.0 * self.kappa

    @property
    def is_lossy(self) -> bool:
        return self.kappa > 0

    @property
    def cutoff_scale(self) -> float:
        return self.cutoff

    @cached_property
    def numerator(self) -> Polynomial:
        return Polynomial([self.cutoff ** 4, 0.0, 0.0, 0.0, 1.0])

    @cached_property
    def denominator(self) -> Polynomial:
        big, ge = self.cutoff, self.gamma_e
        shift = (SQRT2 / 3.0) * ge * big ** 3 * Polynomial([0.0, 0.0, big ** 2, 0.0, -1.0])
        damping = Polynomial([0.0, 0.0, 0.0, (2.0j / 3.0) * ge * big ** 4])
        return Polynomial([-1.0, 0.0, 1.0]) * self.numerator + shift + damping

    def gamma(self, omega):
        """Γ(ω) = Γ_eΩ⁴/(Ω⁴ + ω⁴)."""
        big4 = self.cutoff ** 4
        return self.gamma_e * big4 / (big4 + np.asarray(omega) ** 4)


@dataclass(frozen=True, eq=False)
class TabulatedCoupling:
    """Bath coupling V²(ω) given on a sample grid over (0, ω_max].

    Between samples V² is a cubic spline in ln ω; below the first sample it goes
    linearly to zero and beyond ω_max it decays as V²(ω_max)(ω_max/ω)^p with
    p = ``tail_exponent``.
    """

    omega: np.ndarray
    v_squared: np.ndarray
    tail_exponent: float
    omega_c: float
    omega0_bare: float = 1.0
    kind: ClassVar[str] = "tabulated"

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        v2 = np.asarray(self.v_squared, dtype=float)
        if omega.ndim != 1 or omega.shape != v2.shape or omega.size < 4:
            raise ConfigError("coupling grid and samples must be 1-D arrays of equal length (at least 4)")
        if omega[0] <= 0 or np.any(np.diff(omega) <= 0):
            raise ConfigError("coupling grid must be positive and strictly increasing")
        if np.any(v2 < 0):
            raise ConfigError("coupling samples V² must be non-negative")
        if not self.omega_c >= 0 or not self.omega0_bare > 0:
            raise ConfigError("omega_c must be non-negative and omega0_bare positive")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "v_squared", v2)

    @classmethod
    def from_model(cls, model: Union[LorentzCutoffModel, PointScatterCutoffModel],
                   omega_max: float = 1e4, count: int = 40001, omega_min: float = 1e-4) -> "TabulatedCoupling":
        """Sample the closed-form coupling of a cutoff model onto a log grid."""
        grid = np.geomspace(omega_min, omega_max, count)
        # both couplings fall off as 1/ω above the cutoff
        return cls(omega=grid, v_squared=coupling_squared(model, grid), tail_exponent=1.0,
                   omega_c=model.omega_c)

    @property
    def omega_max(self) -> float:
        return float(self.omega[-1])

    @property
    def is_lossy(self) -> bool:
        return bool(np.any(self.v_squared > 0)) and self.omega_c > 0

    @cached_property
    def _spline(self) -> interpolate.CubicSpline:
        return interpolate.CubicSpline(np.log(self.omega), self.v_squared)

    def v2(self, omega):
        """Interpolated V²(ω) for ω ≥ 0."""
        w = np.asarray(omega, dtype=float)
        lo, hi = self.omega[0], self.omega_max
        inside = np.clip(w, lo, hi)
        out = np.where(
            w < lo,
            self.v_squared[0] * w / lo,
            np.where(w > hi,
                     self.v_squared[-1] * (hi / np.maximum(w, hi)) ** self.tail_exponent,
                     np.maximum(self._spline(np.log(inside)), 0.0)),
        )
        return float(out) if out.ndim == 0 else out

    @cached_property
    def coupling_integral(self) -> float:
        """∫₀^∞ V²(ω)/ω dω."""
        if not self.tail_exponent > 0:
            raise DivergenceError(f"coupling tail ~ ω^-{self.tail_exponent} makes ∫V²/ω diverge")
        head = self.v_squared[0]
        body, _ = quad(lambda s: self.v2(np.exp(s)), np.log(self.omega[0]), np.log(self.omega_max))
        tail = self.v_squared[-1] / self.tail_exponent
        return float(head + body + tail)

    @cached_property
    def renormalized_omega0(self) -> float:
        """Positive root of ω̃₀² = ω₀² + ω̃₀·∫V²/ω."""
        integral = self.coupling_integral
        return 0.5 * (integral + math.sqrt(integral ** 2 + 4.0 * self.omega0_bare ** 2))

    def f_real(self, omega: float) -> float:
        """Re F(ω) = PV ∫ V²(ω₁)[1/(ω₁ - ω) + 1/(ω₁ + ω)] dω₁."""
        hi = self.omega_max
        if not 0.0 < omega < hi:
            raise DomainError(f"Re F needs ω inside the coupling grid (0, {hi}), got {omega}")
        pv, _ = principal_value(self.v2, omega, 0.0, hi, points=(self.omega[0],))
        near, _ = quad(lambda x: self.v2(x) / (x + omega), 0.0, self.omega[0])
        far, _ = quad_log(lambda x: self.v2(x) / (x + omega), self.omega[0], hi)
        p = self.tail_exponent
        tail, _ = quad_log(lambda x: self.v_squared[-1] * (hi / x) ** p * 2.0 * x / (x * x - omega * omega),
                           hi, hi * 1e8)
        return pv + near + far + tail


DielectricModel = Union[LosslessModel, LorentzCutoffModel, PointScatterCutoffModel, TabulatedCoupling]


def epsilon(model: DielectricModel, omega):
    """Dielectric function ε(ω); complex ω uses the analytic continuation of the closed form."""
    if isinstance(model, TabulatedCoupling):
        return epsilon_from_coupling(model, omega)
    return model.epsilon(omega)


def susceptibility(model: DielectricModel, omega):
    """χ(ω) = ε(ω) - 1."""
    return epsilon(model, omega) - 1.0


def refractive_index(model: DielectricModel, omega):
    """n(ω) = √ε(ω) on the branch with Im n ≥ 0."""
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise DomainError(f"refractive index needs ω > 0, got {omega}")
    return index_branch(epsilon(model, omega))


def index_branch(eps):
    """Principal square root, sign-flipped where needed so that Im n ≥ 0."""
    n = np.sqrt(np.asarray(eps, dtype=complex))
    n = np.where(n.imag < 0, -n, n)
    return complex(n) if n.ndim == 0 else n


def renormalized_omega0(model: DielectricModel) -> float:
    """ω̃₀ of the bath coupling: closed forms for the cutoff models, fixed point otherwise."""
    if isinstance(model, TabulatedCoupling):
        return model.renormalized_omega0
    if isinstance(model, LosslessModel):
        return 1.0
    if isinstance(model, LorentzCutoffModel):
        if not model.finite_cutoff:
            raise DivergenceError("ω̃₀ diverges for the Lorentz coupling without cutoff")
        return math.sqrt(1.0 + 2.0 * model.kappa0 * model.cutoff)
    if isinstance(model, PointScatterCutoffModel):
        return math.sqrt(1.0 + SQRT2 * model.gamma_e * model.cutoff ** 3 / 3.0)
    raise ValueError(f"Unknown model type: {type(model).__name__}")


def damping_profile(model: DielectricModel, omega):
    """κ(ω) for the Lorentz model, Γ(ω) for point scatterers, zero without loss."""
    if isinstance(model, LorentzCutoffModel):
        return model.kappa(omega)
    if isinstance(model, PointScatterCutoffModel):
        return model.gamma(omega)
    if isinstance(model, LosslessModel):
        return np.zeros_like(np.asarray(omega, dtype=float))[()]
    raise UnsupportedConfigurationError(f"no damping profile for {model.kind} model")


def coupling_squared(model: DielectricModel, omega):
    """Bath coupling V²(ω) that reproduces the model's ε(ω)."""
    if isinstance(model, TabulatedCoupling):
        return model.v2(omega)
    w = np.asarray(omega, dtype=float)
    if isinstance(model, LosslessModel):
        return np.zeros_like(w)[()]
    w0 = renormalized_omega0(model)
    if isinstance(model, LorentzCutoffModel):
        return 4.0 * model.kappa(w) * w / (math.pi * w0)
    if isinstance(model, PointScatterCutoffModel):
        return 4.0 * model.gamma(w) * w ** 3 / (3.0 * math.pi * w0)
    raise ValueError(f"Unknown model type: {type(model).__name__}")


def delta_shift(model: DielectricModel, omega):
    """Frequency shift Δ(ω), the real part of F(ω)."""
    if isinstance(model, TabulatedCoupling):
        return model.f_real(float(omega))
    if isinstance(model, LosslessModel):
        return 0.0
    w = np.asarray(omega, dtype=float)
    w0 = renormalized_omega0(model)
    big = model.cutoff
    if isinstance(model, LorentzCutoffModel):
        return 4.0 * model.kappa(w) * big / w0
    if isinstance(model, PointScatterCutoffModel):
        return 2.0 * SQRT2 / (3.0 * w0) * model.gamma(w) * big * (big ** 2 + w ** 2)
    raise ValueError(f"Unknown model type: {type(model).__name__}")


def epsilon_from_coupling(coupling: TabulatedCoupling, omega):
    """ε(ω) = 1 - ω_c²/(ω² - ω̃₀² + ω̃₀F(ω)/2) from a tabulated coupling.

    Re F comes from a principal-value quadrature, Im F(ω) = πV²(ω).
    """
    w = np.asarray(omega)
    if np.iscomplexobj(w) and np.any(w.imag != 0):
        raise DomainError("epsilon_from_coupling is defined on the real axis only")
    w = w.real.astype(float)
    if np.any(w <= 0) or np.any(w >= coupling.omega_max):
        raise DomainError(f"ω = {omega} outside the coupling grid support (0, {coupling.omega_max})")
    w0 = coupling.renormalized_omega0

    def one(x: float) -> complex:
        f = coupling.f_real(x) + 1j * math.pi * coupling.v2(x)
        return 1.0 - coupling.omega_c ** 2 / (x * x - w0 * w0 + 0.5 * w0 * f)

    if w.ndim == 0:
        return one(float(w))
    return np.array([one(float(x)) for x in w.ravel()]).reshape(w.shape)


def imag_eps_identity_check(model: DielectricModel, omega: float) -> float:
    """|(πω̃₀/2ω_c²)·V²(ω)·|χ(ω)|² - Im χ(ω)|; vanishes for a consistent coupling."""
    if model.omega_c == 0:
        return 0.0
    chi = susceptibility(model, omega)
    lhs = math.pi * renormalized_omega0(model) / (2.0 * model.omega_c ** 2) * coupling_squared(model, omega) * abs(chi) ** 2
    return float(abs(lhs - np.imag(chi)))


def high_frequency_limit(model: DielectricModel) -> float:
    """ω_lim with ω²χ(ω) → -ω_lim²; equals ω_c for every damped-polariton model."""
    return float(model.omega_c)


def resonance_frequency(model: DielectricModel) -> float:
    """Optical resonance ω_res: real zero of the real part of the resonance denominator."""
    if isinstance(model, LosslessModel):
        return 1.0
    if isinstance(model, LorentzCutoffModel):
        if not model.finite_cutoff or model.kappa0 == 0:
            return 1.0
        big, k0 = model.cutoff, model.kappa0
        # ω_res² = ω₀² + 2κ(ω_res)ω_res²/Ω, solved in x = ω²
        x = optimize.brentq(lambda x: x - 1.0 - 2.0 * k0 * big * x / (big ** 2 + x), 1.0, 1.0 + 2.0 * k0 * big,
                            xtol=1e-15)
        return math.sqrt(x)
    if isinstance(model, PointScatterCutoffModel):
        big, ge = model.cutoff, model.gamma_e
        if ge == 0:
            return 1.0
        x = optimize.brentq(
            lambda x: x - 1.0 + (SQRT2 / 3.0) * ge * big ** 3 * (big ** 2 - x) * x / (big ** 4 + x * x),
            0.0, 1.0, xtol=1e-15)
        return math.sqrt(x)
    raise UnsupportedConfigurationError(f"no resonance frequency for {model.kind} model")


def kramers_kronig_real_part(model: DielectricModel, omega: float, upper: float = 50.0) -> float:
    """Re ε(ω) - 1 from the principal-value transform of Im ε over [0, upper].

    Re ε(ω) - 1 = (1/π) PV∫ Im ε(ω')[1/(ω' - ω) + 1/(ω' + ω)] dω'.
    """
    if not 0 < omega < upper:
        raise DomainError(f"ω = {omega} must lie inside (0, {upper})")
    im_eps = lambda x: float(np.imag(epsilon(model, x)))  # noqa: E731
    res = resonance_frequency(model)
    marks = sorted(p for p in (res - 0.1, res - 0.03, res, res + 0.03, res + 0.1) if 0 < p < upper)
    pv, _ = principal_value(im_eps, omega, 0.0, upper, window=0.25, points=marks)
    regular, _ = quad(lambda x: im_eps(x) / (x + omega), 0.0, upper, points=marks or None)
    return (pv + regular) / math.pi
