# coding: utf-8

"""
Velocity sum rules: branch sums of products of complex phase and group
velocities, checked against targets computed from the model.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..utils.exceptions import IncompleteBranchSetError, UnsupportedConfigurationError
from .dispersion import BranchPoint, BranchSet, require_closed_form, build_polynomial, trace_branches
from .response_models import DielectricModel, high_frequency_limit

logger = logging.getLogger(__name__)


class SumRuleId(str, Enum):
    S_GP = "S_gp"                # Σ Re(v_g v_p) = 1
    S_HB = "S_HB"                # Σ Re(v_g / v_p) = 1
    I_M1 = "I_-1"                # Σ Im(v_g / v_p²) = 0
    I_0 = "I_0"                  # Σ Im(v_g) = 0
    I_1 = "I_1"                  # Σ Im(v_g v_p²) = 0
    I_2 = "I_2"                  # Σ Im(v_g v_p⁴) = 0
    S_STATIC = "S_static"        # Σ Re(v_g / v_p³) = ε(0)
    S_HIGHFREQ = "S_highfreq"    # Σ Re(v_g v_p³) = 1 + ω_lim²/k²


ALL_RULES = tuple(SumRuleId)


@dataclass(frozen=True)
class SumRuleReport:
    rule: SumRuleId
    k: float
    lhs: float
    target: float
    deviation: float

    def as_record(self) -> Dict[str, object]:
        out = asdict(self)
        out["rule"] = self.rule.value
        return out


def i2_applicable(model: DielectricModel) -> bool:
    """ω²χ(ω) + ω_lim² must fall off faster than 1/ω for the q = 2 rule.

    ω²χ + ω_c² = ω_c²(den - ω²num)/den, so the degree gap has to be at least 2.
    """
    model = require_closed_form(model)
    den = model.denominator
    rest = den - model.numerator * np.polynomial.Polynomial([0.0, 0.0, 1.0])
    coef = np.asarray(rest.coef)
    tol = 1e-14 * np.max(np.abs(den.coef))
    nonzero = np.flatnonzero(np.abs(coef) > tol)
    rest_degree = int(nonzero[-1]) if nonzero.size else -1
    return den.degree() - rest_degree >= 2


def branch_sum(rule: SumRuleId, points: Sequence[BranchPoint], model: DielectricModel, k: float) -> SumRuleReport:
    """Evaluate one rule over the given branch points, without completeness checks."""
    rule = SumRuleId(rule)
    vp = np.array([p.v_phase for p in points], dtype=complex)
    vg = np.array([p.v_group for p in points], dtype=complex)
    w = np.array([p.weight for p in points], dtype=float)

    if rule is SumRuleId.S_GP:
        lhs, target = np.sum(w * np.real(vg * vp)), 1.0
    elif rule is SumRuleId.S_HB:
        lhs, target = np.sum(w * np.real(vg / vp)), 1.0
    elif rule is SumRuleId.I_M1:
        lhs, target = np.sum(w * np.imag(vg / vp ** 2)), 0.0
    elif rule is SumRuleId.I_0:
        lhs, target = np.sum(w * np.imag(vg)), 0.0
    elif rule is SumRuleId.I_1:
        lhs, target = np.sum(w * np.imag(vg * vp ** 2)), 0.0
    elif rule is SumRuleId.I_2:
        lhs, target = np.sum(w * np.imag(vg * vp ** 4)), 0.0
    elif rule is SumRuleId.S_STATIC:
        lhs, target = np.sum(w * np.real(vg / vp ** 3)), model.static_epsilon
    else:
        lhs, target = np.sum(w * np.real(vg * vp ** 3)), 1.0 + (high_frequency_limit(model) / k) ** 2
    lhs = float(lhs)
    return SumRuleReport(rule=rule, k=float(k), lhs=lhs, target=float(target), deviation=abs(lhs - target))


def evaluate(rule: SumRuleId, branchset: BranchSet, model: DielectricModel, k: float) -> SumRuleReport:
    """One sum rule at one grid wavenumber of a branch set."""
    rule = SumRuleId(rule)
    if rule is SumRuleId.I_2 and not i2_applicable(model):
        raise UnsupportedConfigurationError(
            f"I_2 needs ω²χ + ω_lim² to decay faster than 1/ω; not the case for the {model.kind} model")
    points = branchset.points_at(k)
    expected = build_polynomial(model, k).genuine_root_count
    found = sum(p.multiplicity for p in points)
    if found < expected:
        raise IncompleteBranchSetError(f"branch set holds {found} of {expected} roots at k = {k:.6g}")
    return branch_sum(rule, points, model, k)


def applicable_rules(model: DielectricModel) -> List[SumRuleId]:
    rules = list(ALL_RULES)
    if not i2_applicable(model):
        logger.info("skipping I_2 for the %s model: ω²χ + ω_lim² decays only as 1/ω", model.kind)
        rules.remove(SumRuleId.I_2)
    return rules


def full_report(model: DielectricModel, k_grid: Iterable[float], *, threads: int = 1,
                branchset: Optional[BranchSet] = None) -> List[SumRuleReport]:
    """Every applicable rule at every k, ordered by k then rule."""
    if branchset is None:
        branchset = trace_branches(model, k_grid, threads=threads)
    rules = applicable_rules(model)
    return [evaluate(rule, branchset, model, k) for k in branchset.k_grid for rule in rules]


def max_deviations(reports: Iterable[SumRuleReport]) -> Dict[str, float]:
    """Largest deviation per rule."""
    out: Dict[str, float] = {}
    for r in reports:
        out[r.rule.value] = max(out.get(r.rule.value, 0.0), r.deviation)
    return out
