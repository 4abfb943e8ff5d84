# coding: utf-8

import logging
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dampedpolariton.modules.dispersion import (
    BranchPoint,
    _newton,
    build_polynomial,
    dispersion_roots,
    group_velocity,
    polariton_group_velocity_sum,
    trace_branches,
)
from dampedpolariton.modules.response_models import (
    LosslessModel,
    LorentzCutoffModel,
    PointScatterCutoffModel,
    TabulatedCoupling,
    epsilon,
)
from dampedpolariton.utils.exceptions import DomainError, UnsupportedConfigurationError

wavenumber = st.floats(0.05, 5.0)
lossy_wavenumber = st.floats(0.1, 3.0)


def lossless_oracle(k, wc=0.5):
    """Positive roots of ω⁴ - (1 + ω_c² + k²)ω² + k² = 0."""
    b = 1.0 + wc * wc + k * k
    disc = math.sqrt(b * b - 4.0 * k * k)
    return sorted([math.sqrt(0.5 * (b - disc)), math.sqrt(0.5 * (b + disc))])


def test_lossless_roots_at_unit_wavenumber(lossless):
    points = dispersion_roots(lossless, 1.0)
    assert [p.omega.real for p in points] == pytest.approx([0.780776, 1.280776], abs=1e-6)
    assert all(p.omega.imag == 0.0 for p in points)
    for p in points:
        assert p.v_group.real == pytest.approx(0.485073, abs=1e-6)
        assert p.v_phase == pytest.approx(p.omega / 1.0)
        assert p.weight == 1.0 and p.multiplicity == 2


@given(wavenumber)
def test_lossless_matches_quadratic_oracle(k):
    points = dispersion_roots(LosslessModel(0.5), k)
    assert [p.omega.real for p in points] == pytest.approx(lossless_oracle(k), rel=1e-12)


@pytest.mark.parametrize("model_name,expected", [
    ("lossless", 4), ("lorentz_nocutoff", 4), ("lorentz", 5), ("point", 6),
])
def test_genuine_root_count(request, model_name, expected):
    model = request.getfixturevalue(model_name)
    poly = build_polynomial(model, 1.0)
    assert poly.genuine_root_count == expected
    points = dispersion_roots(model, 1.0)
    assert sum(p.multiplicity for p in points) == expected


@given(lossy_wavenumber)
def test_roots_are_canonical_and_solve_dispersion(k):
    for model in (LorentzCutoffModel(0.5, 0.01, 10.0), LorentzCutoffModel(0.5, 0.01),
                  PointScatterCutoffModel(0.5, 0.01, 10.0)):
        for p in dispersion_roots(model, k):
            assert p.omega.real >= 0.0 and p.omega.imag <= 0.0
            residual = abs(p.omega ** 2 * epsilon(model, p.omega) - k * k)
            assert residual < 1e-9 * (k * k + abs(p.omega) ** 2)


def test_roots_sorted_by_modulus(lorentz):
    mods = [abs(p.omega) for p in dispersion_roots(lorentz, 1.0)]
    assert mods == sorted(mods)


def test_cutoff_root_is_purely_imaginary(lorentz):
    points = dispersion_roots(lorentz, 1.0)
    imaginary = [p for p in points if p.self_conjugate]
    assert len(imaginary) == 1
    assert imaginary[0].weight == 0.5
    assert imaginary[0].multiplicity == 1


def test_group_velocity_matches_finite_difference(lorentz):
    k, h = 1.0, 1e-6
    upper = lambda kk: max(dispersion_roots(lorentz, kk), key=lambda p: p.omega.real if abs(p.omega) < 5 else -1)  # noqa: E731
    p = upper(k)
    fd = (upper(k + h).omega - upper(k - h).omega) / (2.0 * h)
    assert p.v_group == pytest.approx(fd, rel=1e-6)
    assert group_velocity(lorentz, p.omega, k) == pytest.approx(p.v_group)


def test_wavenumber_domain(lossless):
    with pytest.raises(DomainError):
        dispersion_roots(lossless, 0.0)
    with pytest.raises(DomainError):
        build_polynomial(lossless, -1.0)


def test_tabulated_coupling_has_no_polynomial(lorentz):
    coupling = TabulatedCoupling.from_model(lorentz, count=101)
    with pytest.raises(UnsupportedConfigurationError):
        dispersion_roots(coupling, 1.0)


def test_fig1_branch_structure(lorentz):
    branchset = trace_branches(lorentz, np.linspace(0.1, 3.0, 30))
    assert set(branchset.labels) >= {"lower", "upper", "cutoff"}
    lower, upper, cutoff = (branchset.track(lab) for lab in ("lower", "upper", "cutoff"))
    polariton_damping = np.max(np.abs(np.concatenate([lower.omega.imag, upper.omega.imag])))
    assert np.min(np.abs(cutoff.omega.imag)) > 100.0 * polariton_damping
    # lower branch stays below the upper one
    assert np.all(lower.omega.real < upper.omega.real)
    assert polariton_group_velocity_sum(branchset).shape == (30,)


def test_cutoff_branch_barely_moves(lorentz):
    branchset = trace_branches(lorentz, [0.5, 1.0, 1.5])
    v_g = branchset.track("cutoff").v_group[1]
    assert abs(v_g) < 1e-4


def test_low_cutoff_still_finds_both_polaritons():
    model = LorentzCutoffModel(0.5, 0.01, 2.0)
    branchset = trace_branches(model, np.linspace(0.1, 3.0, 30))
    assert set(branchset.labels) == {"lower", "upper", "cutoff"}
    lower, upper = branchset.track("lower"), branchset.track("upper")
    assert np.all(lower.omega.real < upper.omega.real)
    assert upper.omega[0].real == pytest.approx(math.sqrt(1.25), abs=0.05)
    assert np.all(branchset.track("cutoff").omega.real == 0.0)


def test_point_scatter_polariton_damping_cancels(point):
    branchset = trace_branches(point, np.linspace(0.1, 3.0, 30))
    assert np.max(np.abs(polariton_group_velocity_sum(branchset))) < 1e-4


@given(lossy_wavenumber)
def test_genuine_roots_come_in_mirror_pairs(k):
    for model in (LorentzCutoffModel(0.5, 0.01, 10.0), PointScatterCutoffModel(0.5, 0.01, 10.0)):
        poly = build_polynomial(model, k)
        roots = [r for r in poly.roots()
                 if not any(abs(r - s) <= 1e-6 * max(1.0, abs(s)) for s in poly.spurious_roots)]
        for r in roots:
            mirror = -np.conj(r)
            assert min(abs(mirror - q) for q in roots) <= 1e-6 * max(1.0, abs(r))


def test_sum_rule_weights(lorentz):
    branchset = trace_branches(lorentz, [0.5, 1.0])
    weights = branchset.sum_rule_weights
    assert weights.shape == (2, len(branchset.tracks))
    for row in weights:
        assert sorted(row) == [0.5, 1.0, 1.0]


def test_newton_warns_when_not_converged(lorentz, caplog):
    with caplog.at_level(logging.WARNING, logger="dampedpolariton.modules.dispersion"):
        _newton(lorentz, 1.0, 5.0 + 0j, max_iter=1)
    assert "did not converge" in caplog.text


def test_root_refinement_is_quiet(lorentz, caplog):
    with caplog.at_level(logging.WARNING, logger="dampedpolariton.modules.dispersion"):
        dispersion_roots(lorentz, 1.0)
    assert "did not converge" not in caplog.text


def test_trace_is_deterministic_across_workers(point):
    ks = np.linspace(0.2, 2.0, 12)
    serial = trace_branches(point, ks).as_records()
    parallel = trace_branches(point, ks, threads=4).as_records()
    assert serial == parallel


def test_as_records_columns(lossless):
    rows = trace_branches(lossless, [0.5, 1.0]).as_records()
    assert len(rows) == 4
    assert list(rows[0]) == ["k", "branch_label", "re_omega", "im_omega", "re_vp", "im_vp", "re_vg", "im_vg"]
    assert {r["branch_label"] for r in rows} == {"lower", "upper"}


def test_trace_rejects_bad_grid(lossless):
    with pytest.raises(DomainError):
        trace_branches(lossless, [1.0, 0.5])
    with pytest.raises(DomainError):
        trace_branches(lossless, [0.0, 0.5])


def test_branch_point_weights():
    paired = BranchPoint(omega=1.0 - 0.1j, v_phase=1.0 - 0.1j, v_group=0.5 + 0j)
    imaginary = BranchPoint(omega=-2.0j, v_phase=-2.0j, v_group=0.1j)
    assert (paired.weight, paired.multiplicity) == (1.0, 2)
    assert (imaginary.weight, imaginary.multiplicity) == (0.5, 1)
