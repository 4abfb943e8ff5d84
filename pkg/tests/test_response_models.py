# coding: utf-8

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dampedpolariton.modules.response_models import (
    LosslessModel,
    LorentzCutoffModel,
    PointScatterCutoffModel,
    TabulatedCoupling,
    coupling_squared,
    damping_profile,
    delta_shift,
    epsilon,
    epsilon_from_coupling,
    high_frequency_limit,
    imag_eps_identity_check,
    index_branch,
    kramers_kronig_real_part,
    refractive_index,
    renormalized_omega0,
    resonance_frequency,
    susceptibility,
)
from dampedpolariton.utils.exceptions import ConfigError, DivergenceError, DomainError, SingularityError

upper_half = st.builds(complex, st.floats(-3.0, 3.0), st.floats(0.05, 2.0))
real_freq = st.floats(0.01, 5.0)


def test_lossless_closed_form(lossless):
    assert epsilon(lossless, 2.0) == pytest.approx(1.0 - 0.25 / 3.0, rel=1e-14)
    assert lossless.static_epsilon == pytest.approx(1.25)
    assert not lossless.is_lossy


def test_lossless_pole_raises(lossless):
    with pytest.raises(SingularityError):
        epsilon(lossless, 1.0)


def test_lorentz_on_resonance(lorentz_nocutoff):
    eps = epsilon(lorentz_nocutoff, 1.0)
    assert eps == pytest.approx(1.0 + 12.5j, rel=1e-13)
    oracle = complex(mpmath.sqrt(mpmath.mpc(1.0, 12.5)))
    assert refractive_index(lorentz_nocutoff, 1.0) == pytest.approx(oracle, rel=1e-13)
    assert oracle.real == pytest.approx(2.601917, abs=1e-6)
    assert oracle.imag == pytest.approx(2.402076, abs=1e-6)


@pytest.mark.parametrize("omega", [0.3, 0.99, 1.7, 12.0])
def test_lorentz_cutoff_matches_kappa_form(lorentz, omega):
    big, k0 = lorentz.cutoff, lorentz.kappa0
    kappa = k0 * big ** 2 / (big ** 2 + omega ** 2)
    expected = 1.0 - 0.25 / (omega ** 2 - 1.0 - 2.0 * big * (k0 - kappa) + 2j * omega * kappa)
    assert epsilon(lorentz, omega) == pytest.approx(expected, rel=1e-12)
    assert damping_profile(lorentz, omega) == pytest.approx(kappa, rel=1e-14)


@pytest.mark.parametrize("omega", [0.3, 0.99, 1.7, 12.0])
def test_point_matches_gamma_form(point, omega):
    big, ge = point.cutoff, point.gamma_e
    gamma = ge * big ** 4 / (big ** 4 + omega ** 4)
    shift = math.sqrt(2.0) / 3.0 * ge * big ** 3 * (big ** 2 - omega ** 2) * omega ** 2 / (big ** 4 + omega ** 4)
    expected = 1.0 - 0.25 / (omega ** 2 - 1.0 + shift + 2j / 3.0 * gamma * omega ** 3)
    assert epsilon(point, omega) == pytest.approx(expected, rel=1e-12)
    assert point.gamma_e == pytest.approx(0.03)


@pytest.mark.parametrize("model_name", ["lorentz", "point"])
@pytest.mark.parametrize("omega", [0.2, 0.95, 1.0, 2.0, 30.0])
def test_coupling_form_reproduces_closed_form(request, model_name, omega):
    """ε = 1 - ω_c²/(ω² - ω̃₀² + ω̃₀[Δ + iπV²]/2) with the model's Δ and V²."""
    model = request.getfixturevalue(model_name)
    w0 = renormalized_omega0(model)
    f = delta_shift(model, omega) + 1j * math.pi * coupling_squared(model, omega)
    expected = 1.0 - model.omega_c ** 2 / (omega ** 2 - w0 ** 2 + 0.5 * w0 * f)
    assert epsilon(model, omega) == pytest.approx(expected, rel=1e-10)


def test_renormalized_omega0(lorentz, point, lorentz_nocutoff, lossless):
    assert renormalized_omega0(lorentz) == pytest.approx(math.sqrt(1.2))
    assert renormalized_omega0(point) == pytest.approx(math.sqrt(1.0 + math.sqrt(2.0) * 0.03 * 1000.0 / 3.0))
    assert renormalized_omega0(lossless) == 1.0
    with pytest.raises(DivergenceError):
        renormalized_omega0(lorentz_nocutoff)


@pytest.mark.parametrize("model_name", ["lorentz", "point"])
@pytest.mark.parametrize("omega", [0.1, 0.9, 1.0, 1.3, 5.0])
def test_imaginary_part_identity(request, model_name, omega):
    model = request.getfixturevalue(model_name)
    assert imag_eps_identity_check(model, omega) < 1e-12 * max(1.0, abs(susceptibility(model, omega)))


@given(upper_half)
def test_reflection_symmetry(omega):
    # ε(-ω*) = ε(ω)* off the real axis, for every closed-form model
    for model in (LosslessModel(0.5), LorentzCutoffModel(0.5, 0.01, 10.0), LorentzCutoffModel(0.5, 0.01),
                  PointScatterCutoffModel(0.5, 0.01, 10.0)):
        a = epsilon(model, -omega.conjugate())
        b = np.conj(epsilon(model, omega))
        assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


@given(real_freq)
def test_index_branch_is_passive(omega):
    for model in (LorentzCutoffModel(0.5, 0.01, 10.0), LorentzCutoffModel(0.5, 0.01),
                  PointScatterCutoffModel(0.5, 0.01, 10.0)):
        eps = epsilon(model, omega)
        n = refractive_index(model, omega)
        assert n.imag >= 0.0
        assert abs(n * n - eps) <= 1e-12 * max(1.0, abs(eps))


def test_index_branch_flips_sign():
    assert index_branch(-1.0 - 1e-3j).imag > 0
    assert index_branch(np.array([4.0, -4.0 + 0j])) == pytest.approx(np.array([2.0, 2j]))


def test_refractive_index_domain(lorentz):
    with pytest.raises(DomainError):
        refractive_index(lorentz, 0.0)
    with pytest.raises(DomainError):
        refractive_index(lorentz, np.array([0.5, -1.0]))


def test_static_and_high_frequency_limits(any_model):
    assert any_model.static_epsilon == pytest.approx(1.25, rel=1e-12)
    assert high_frequency_limit(any_model) == 0.5
    # ω²χ(ω) → -ω_c²
    omega = 1e5
    assert (omega ** 2 * susceptibility(any_model, omega)).real == pytest.approx(-0.25, rel=1e-3)


def test_resonance_frequency(lorentz, point, lorentz_nocutoff):
    assert resonance_frequency(lorentz_nocutoff) == 1.0
    x = resonance_frequency(lorentz) ** 2
    assert x - 1.0 - 2.0 * 0.01 * 10.0 * x / (100.0 + x) == pytest.approx(0.0, abs=1e-13)
    # large-Ω estimate ω₀² + 2κ₀ω₀²/Ω
    assert x == pytest.approx(1.002, abs=1e-4)
    res = resonance_frequency(point)
    assert 0.0 < res < 1.0
    # real part of the resonance denominator vanishes there
    assert (1.0 / susceptibility(point, res)).real == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("kwargs", [
    dict(omega_c=-0.1, kappa0=0.01),
    dict(omega_c=0.5, kappa0=-0.01),
    dict(omega_c=0.5, kappa0=0.01, cutoff=0.5),
])
def test_lorentz_rejects_bad_parameters(kwargs):
    with pytest.raises(ConfigError):
        LorentzCutoffModel(**kwargs)


def test_model_parameter_checks():
    with pytest.raises(ConfigError):
        LosslessModel(omega_c=0.0)
    with pytest.raises(ConfigError):
        PointScatterCutoffModel(omega_c=0.5, kappa=0.01, cutoff=math.inf)
    # vacuum is a valid Lorentz medium
    vacuum = LorentzCutoffModel(omega_c=0.0, kappa0=0.01)
    assert epsilon(vacuum, 0.7) == 1.0
    assert not vacuum.is_lossy


@pytest.mark.parametrize("model_name", ["lorentz", "lorentz_nocutoff", "point"])
@pytest.mark.parametrize("omega", [0.5, 1.5, 2.0, 2.5])
def test_kramers_kronig(request, model_name, omega):
    model = request.getfixturevalue(model_name)
    expected = epsilon(model, omega).real - 1.0
    assert kramers_kronig_real_part(model, omega) == pytest.approx(expected, abs=1e-5)


def test_kramers_kronig_domain(lorentz):
    with pytest.raises(DomainError):
        kramers_kronig_real_part(lorentz, 60.0)


def test_tabulated_coupling_checks():
    grid = np.geomspace(1e-3, 1e3, 50)
    with pytest.raises(ConfigError):
        TabulatedCoupling(omega=grid, v_squared=-np.ones_like(grid), tail_exponent=1.0, omega_c=0.5)
    with pytest.raises(ConfigError):
        TabulatedCoupling(omega=grid[::-1], v_squared=np.ones_like(grid), tail_exponent=1.0, omega_c=0.5)
    flat = TabulatedCoupling(omega=grid, v_squared=np.ones_like(grid), tail_exponent=0.0, omega_c=0.5)
    with pytest.raises(DivergenceError):
        flat.renormalized_omega0


def test_tabulated_coupling_interpolates(lorentz):
    coupling = TabulatedCoupling.from_model(lorentz, count=4001)
    for w in (0.05, 1.0, 7.0):
        assert coupling.v2(w) == pytest.approx(coupling_squared(lorentz, w), rel=1e-8)
    # linear below the grid, power law above
    assert coupling.v2(0.5 * coupling.omega[0]) == pytest.approx(0.5 * coupling.v_squared[0])
    assert coupling.v2(2.0 * coupling.omega_max) == pytest.approx(0.5 * coupling.v_squared[-1])
    assert coupling.renormalized_omega0 == pytest.approx(math.sqrt(1.2), rel=1e-6)


def test_epsilon_from_coupling_domain(lorentz):
    coupling = TabulatedCoupling.from_model(lorentz, count=401)
    with pytest.raises(DomainError):
        epsilon_from_coupling(coupling, 0.0)
    with pytest.raises(DomainError):
        epsilon_from_coupling(coupling, 2e4)
    with pytest.raises(DomainError):
        epsilon_from_coupling(coupling, coupling.omega_max)
    with pytest.raises(DomainError):
        coupling.f_real(coupling.omega_max)


@pytest.mark.slow
@pytest.mark.parametrize("model_name", ["lorentz", "point"])
def test_epsilon_from_coupling_reproduces_closed_form(request, model_name):
    model = request.getfixturevalue(model_name)
    coupling = TabulatedCoupling.from_model(model)
    for w in (0.1, 0.5, 1.5, 3.0):
        closed = epsilon(model, w)
        assert abs(epsilon_from_coupling(coupling, w) - closed) / abs(closed) < 1e-6
