# coding: utf-8

"""
Pipeline of one analysis run: build the model from the run configuration,
sweep the grid, write the records
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from rich.progress import track

from . import __version__
from .config.run_config import RunConfig
from .modules import dispersion, emission, sum_rules, transients
from .modules.response_models import (
    LosslessModel,
    LorentzCutoffModel,
    PointScatterCutoffModel,
    TabulatedCoupling,
    epsilon,
    epsilon_from_coupling,
    kramers_kronig_real_part,
)
from .utils.exceptions import ValidationFailure
from .utils.helper import make_grid
from .utils.io import write_records
from .utils.rprint import rlog as log
from .utils.timer import Timer

DISPERSION_COLUMNS = ["k", "branch_label", "re_omega", "im_omega", "re_vp", "im_vp", "re_vg", "im_vg"]
SUMRULE_COLUMNS = ["rule", "k", "lhs", "target", "deviation"]
EMISSION_COLUMNS = ["delta_t", "gamma_over_gamma0"]
INDEX_COLUMNS = ["omega", "re_n", "im_n", "re_eps", "im_eps"]
VALIDATE_COLUMNS = ["suite", "parameter", "value", "target", "deviation", "limit", "passed"]
COEFF_COLUMNS = ["k", "t"] + [f"M_{r}{c}" for r in transients.FIELDS for c in transients.FIELDS]

# floors of the per-suite thresholds; --tolerance can only loosen them
EMISSION_AGREEMENT_TOL = 1e-3
COUPLING_RTOL = 1e-6
KRAMERS_KRONIG_TOL = 1e-5


@dataclass
class RunResult:
    analysis: str
    records: List[Dict[str, Any]]
    columns: List[str]
    meta: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0


class PolaritonPipeline(object):

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.model = cfg.model.build()
        self.timer = Timer()
        log(f"Model: {self.model}")

    ########## analyses ##########
    def run_dispersion(self) -> RunResult:
        branchset = dispersion.trace_branches(self.model, self.cfg.k_grid.values(), threads=self.cfg.threads)
        log(f"  traced branches: {', '.join(branchset.labels)}")
        return RunResult("dispersion", branchset.as_records(), DISPERSION_COLUMNS)

    def run_sumrules(self) -> RunResult:
        reports = sum_rules.full_report(self.model, self.cfg.k_grid.values(), threads=self.cfg.threads)
        worst = sum_rules.max_deviations(reports)
        for rule, dev in worst.items():
            log(f"  {rule:>10s}: max deviation {dev:.3e}")
        return RunResult("sumrules", [r.as_record() for r in reports], SUMRULE_COLUMNS, meta={"max_deviation": worst})

    def run_coeffs(self) -> RunResult:
        ks = self.cfg.k_grid.values()
        records = []
        for k in track(ks, description="Coefficient matrices...", total=len(ks)):
            points = dispersion.dispersion_roots(self.model, k)
            for t in self.cfg.times:
                records.append(transients.coefficient_matrix(self.model, k, t, points).as_record())
        return RunResult("coeffs", records, COEFF_COLUMNS)

    def run_emission(self) -> RunResult:
        params = self.cfg.emission.params(self.model)
        method = self.cfg.emission.method
        ts = self.cfg.t_grid.values()
        curve = emission.emission_curve(params, ts, method, threads=self.cfg.threads)
        log(f"  Re n(ω_A) = {curve.equilibrium:.6f}, Γ/Γ₀ at Δt = {ts[-1]:g}: {curve.gamma_over_gamma0[-1]:.6f}")
        meta = {"method": method, "omega_A": params.omega_A, "conv_cutoff": params.conv_cutoff,
                "equilibrium": curve.equilibrium}
        return RunResult("emission", curve.as_records(), EMISSION_COLUMNS, meta=meta)

    def run_index(self) -> RunResult:
        ws = self.cfg.omega_grid.values()
        n = emission.refractive_index_curve(self.model, ws)
        eps = epsilon(self.model, ws)
        records = [{"omega": float(w), "re_n": float(ni.real), "im_n": float(ni.imag),
                    "re_eps": float(e.real), "im_eps": float(e.imag)} for w, ni, e in zip(ws, n, eps)]
        return RunResult("index", records, INDEX_COLUMNS)

    ########## validation ##########
    def _check(self, rows: List[Dict[str, Any]], suite: str, parameter: str, value: float, target: float,
               limit: float, relative: bool = False):
        deviation = abs(value - target)
        if relative:
            deviation /= max(abs(target), 1e-300)
        passed = bool(deviation <= limit) and math.isfinite(deviation)
        rows.append({"suite": suite, "parameter": parameter, "value": float(value), "target": float(target),
                     "deviation": float(deviation), "limit": float(limit), "passed": passed})
        if not passed:
            log(f"  ❌ {suite} ({parameter}): deviation {deviation:.3e} > {limit:.1e}")

    def _suite_sum_rules(self, rows):
        for r in sum_rules.full_report(self.model, self.cfg.k_grid.values(), threads=self.cfg.threads):
            self._check(rows, "sum_rule", f"{r.rule.value} k={r.k:.6g}", r.lhs, r.target, self.cfg.tolerance)

    def _suite_initial_identity(self, rows):
        if self.model.omega_c == 0:
            log("  skipping M(0) = I: uncoupled medium")
            return
        for k in self.cfg.validate_.coeff_k:
            m = transients.coefficient_matrix(self.model, k, 0.0).m
            self._check(rows, "initial_identity", f"k={k:.6g}", float(np.max(np.abs(m - np.eye(4)))), 0.0,
                        self.cfg.tolerance)

    def _suite_commutator(self, rows):
        if self.model.omega_c == 0:
            return
        for k in self.cfg.validate_.commutator_k:
            residues = transients.commutator_residue_sum(self.model, k)
            if self.model.is_lossy:
                target = transients.commutator_integral(self.model, k)
            else:
                # equal-time commutator of the lossless medium is canonical
                target = 1.0
            self._check(rows, "commutator", f"k={k:.6g}", residues, target, self.cfg.tolerance)

    def _suite_method_agreement(self, rows):
        model = self.model
        if not (isinstance(model, LorentzCutoffModel) and not model.finite_cutoff and model.kappa0 < 1):
            log("  skipping emission method agreement: needs the Lorentz model without cutoff")
            return
        params = self.cfg.emission.params(model)
        limit = max(self.cfg.tolerance, EMISSION_AGREEMENT_TOL)
        times = self.cfg.validate_.emission_times
        for t in track(times, description="Emission methods...", total=len(times)):
            self._check(rows, "method_agreement", f"dt={t:g}", emission.gamma_direct(params, t),
                        emission.gamma_contour(params, t), limit)

    def _suite_coupling(self, rows):
        model = self.model
        if not isinstance(model, (LorentzCutoffModel, PointScatterCutoffModel)) or \
                not math.isfinite(model.cutoff_scale) or model.omega_c == 0:
            log("  skipping ε-from-coupling: needs a coupled cutoff model")
            return
        spec = self.cfg.validate_.coupling_omega
        ws = spec.values() if spec is not None else make_grid(0.1, 3.0, 20)
        coupling = TabulatedCoupling.from_model(model)
        limit = max(self.cfg.tolerance, COUPLING_RTOL)
        for w in track(ws, description="ε from coupling...", total=len(ws)):
            closed = complex(epsilon(model, w))
            tabulated = complex(epsilon_from_coupling(coupling, w))
            self._check(rows, "epsilon_from_coupling", f"omega={w:.6g}", abs(tabulated - closed) / abs(closed), 0.0,
                        limit)

    def _suite_kramers_kronig(self, rows):
        if isinstance(self.model, LosslessModel) or not self.model.is_lossy:
            return
        limit = max(self.cfg.tolerance, KRAMERS_KRONIG_TOL)
        for w in self.cfg.validate_.kk_omega:
            self._check(rows, "kramers_kronig", f"omega={w:.6g}", kramers_kronig_real_part(self.model, w),
                        float(np.real(epsilon(self.model, w))) - 1.0, limit)

    def run_validate(self) -> RunResult:
        rows: List[Dict[str, Any]] = []
        suites: List[Callable] = [self._suite_sum_rules, self._suite_initial_identity, self._suite_commutator,
                                  self._suite_method_agreement, self._suite_coupling, self._suite_kramers_kronig]
        for suite in suites:
            name = suite.__name__.replace("_suite_", "")
            log(f"  ⏳ {name}")
            suite(rows)
        failed = sum(not r["passed"] for r in rows)
        meta = {"checks": len(rows), "failed": failed}
        return RunResult("validate", rows, VALIDATE_COLUMNS, meta=meta)
    ##############################

    def execute(self, write: bool = True) -> RunResult:
        analysis = self.cfg.analysis
        runner = getattr(self, f"run_{analysis}")
        log(f"⏳ Running {analysis}...")
        try:
            with self.timer:
                result = runner()
        except Exception as e:
            log(f"❌ {analysis} failed: {e}")
            raise
        result.elapsed = self.timer.diff
        result.meta = {"analysis": analysis, "version": __version__,
                       "model": self.cfg.model.model_dump(), **result.meta}
        log(f"✅ {analysis} done in {result.elapsed:.2f}s, {len(result.records)} records")
        if write:
            write_records(result.records, self.cfg.output.path, self.cfg.output.format, result.columns, result.meta)
            if self.cfg.output.path is not None:
                log(f"Written to {self.cfg.output.path}")
        if analysis == "validate" and result.meta["failed"]:
            raise ValidationFailure(f"{result.meta['failed']} of {result.meta['checks']} checks above tolerance")
        return result
