# coding: utf-8

"""
run configuration: a YAML recipe validated with pydantic, merged with the
command-line overrides of ArgumentConfig
"""

import logging
import math
from typing import Any, Dict, List, Literal, Optional

import numpy as np
import pydantic as pd
import yaml

from ..modules.emission import EmissionParams
from ..modules.response_models import (
    DielectricModel,
    LosslessModel,
    LorentzCutoffModel,
    PointScatterCutoffModel,
)
from ..utils.exceptions import ConfigError
from ..utils.helper import make_grid
from .argument_config import Analysis, ArgumentConfig
from .base_config import recipe_path

logger = logging.getLogger(__name__)

# analyses and the grid each of them sweeps
REQUIRED_GRID = {
    "dispersion": "k_grid",
    "sumrules": "k_grid",
    "coeffs": "k_grid",
    "validate": "k_grid",
    "emission": "t_grid",
    "index": "omega_grid",
}


class _Spec(pd.BaseModel):
    model_config = pd.ConfigDict(extra="forbid", frozen=True)


class ModelSpec(_Spec):
    """Medium; `kappa` is κ₀ for the Lorentz model and κ for point scatterers."""

    type: Literal["lossless", "lorentz", "point"]
    omega_c: float = pd.Field(0.5, ge=0.0, description="plasma-like coupling frequency, units of ω₀")
    kappa: float = pd.Field(0.0, ge=0.0, description="damping rate, units of ω₀")
    cutoff: Optional[float] = pd.Field(None, description="bath cutoff Ω, units of ω₀; unset means infinite")

    @pd.model_validator(mode="after")
    def check_consistency(self):
        # building runs the model's own parameter checks
        self.build()
        return self

    def build(self) -> DielectricModel:
        if self.type == "lossless":
            if self.kappa or self.cutoff is not None:
                raise ConfigError("the lossless model takes neither kappa nor cutoff")
            return LosslessModel(omega_c=self.omega_c)
        if self.type == "lorentz":
            cutoff = math.inf if self.cutoff is None else self.cutoff
            return LorentzCutoffModel(omega_c=self.omega_c, kappa0=self.kappa, cutoff=cutoff)
        if self.cutoff is None:
            raise ConfigError("the point-scattering model needs a finite cutoff")
        return PointScatterCutoffModel(omega_c=self.omega_c, kappa=self.kappa, cutoff=self.cutoff)


class GridSpec(_Spec):
    min: float
    max: float
    count: int = pd.Field(ge=2)
    spacing: Literal["linear", "log"] = "linear"

    @pd.model_validator(mode="after")
    def check_consistency(self):
        if not self.min < self.max:
            raise ConfigError(f"grid needs min < max, got [{self.min}, {self.max}]")
        if self.spacing == "log" and self.min <= 0:
            raise ConfigError(f"log grid needs min > 0, got {self.min}")
        return self

    def values(self) -> np.ndarray:
        return make_grid(self.min, self.max, self.count, self.spacing)


class EmissionSpec(_Spec):
    omega_A: float = pd.Field(1.0, gt=0.0)
    conv_cutoff: float = pd.Field(50.0, gt=0.0)
    method: Literal["direct", "contour", "asymptotic"] = "direct"
    t0: float = 0.0

    def params(self, model: DielectricModel) -> EmissionParams:
        return EmissionParams(omega_A=self.omega_A, model=model, conv_cutoff=self.conv_cutoff, t0=self.t0)


class OutputSpec(_Spec):
    path: Optional[str] = None
    format: Literal["csv", "json"] = "csv"


class ValidateSpec(_Spec):
    """Extra inputs of the validate suites."""

    coeff_k: List[float] = pd.Field(default_factory=lambda: [0.3, 0.7, 1.0, 1.5, 2.5])
    commutator_k: List[float] = pd.Field(default_factory=lambda: [1.0])
    emission_times: List[float] = pd.Field(default_factory=lambda: [5.0, 20.0, 50.0, 100.0, 200.0, 400.0])
    coupling_omega: Optional[GridSpec] = None
    kk_omega: List[float] = pd.Field(default_factory=lambda: [0.5, 1.5, 2.5])


class RunConfig(_Spec):
    analysis: Analysis
    model: ModelSpec
    k_grid: Optional[GridSpec] = None
    t_grid: Optional[GridSpec] = None
    omega_grid: Optional[GridSpec] = None
    times: List[float] = pd.Field(default_factory=lambda: [0.0], description="coeffs: times t of M(t)")
    emission: EmissionSpec = pd.Field(default_factory=EmissionSpec)
    validate_: ValidateSpec = pd.Field(default_factory=ValidateSpec, alias="validate")
    output: OutputSpec = pd.Field(default_factory=OutputSpec)
    tolerance: float = pd.Field(1e-6, gt=0.0)
    threads: int = pd.Field(1, ge=1)

    model_config = pd.ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    @pd.model_validator(mode="after")
    def check_consistency(self):
        grid = REQUIRED_GRID[self.analysis]
        if getattr(self, grid) is None:
            raise ConfigError(f"analysis '{self.analysis}' needs a {grid}")
        if self.analysis == "emission" and self.t_grid.min < 0:
            raise ConfigError("t_grid must be non-negative")
        return self


def _merge(raw: Dict[str, Any], args: ArgumentConfig) -> Dict[str, Any]:
    """Flag overrides on top of the recipe mapping."""
    merged = dict(raw)
    merged["analysis"] = args.analysis
    output = dict(merged.get("output") or {})
    if args.out is not None:
        output["path"] = args.out
    if args.format is not None:
        output["format"] = args.format
    merged["output"] = output
    if args.tolerance is not None:
        merged["tolerance"] = args.tolerance
    if args.method is not None:
        merged["emission"] = {**(merged.get("emission") or {}), "method": args.method}
    merged["threads"] = args.threads
    return merged


def load_recipe(path: str) -> Dict[str, Any]:
    fn = recipe_path(path)
    try:
        with open(fn, "r", encoding="utf-8") as f:
            raw = yaml.load(f, Loader=yaml.SafeLoader)
    except OSError as e:
        raise ConfigError(f"cannot read config {fn}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed YAML in {fn}: {e}") from e
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigError(f"config {fn} must hold a mapping at top level")
    logger.debug("loaded recipe %s", fn)
    return raw


def build_run_config(args: ArgumentConfig) -> RunConfig:
    """Recipe (if any) plus flag overrides, validated."""
    raw = load_recipe(args.config) if args.config is not None else {}
    recipe_analysis = raw.get("analysis")
    if recipe_analysis is not None and recipe_analysis != args.analysis:
        logger.info("recipe is for '%s', running '%s' as requested", recipe_analysis, args.analysis)
    try:
        return RunConfig.model_validate(_merge(raw, args))
    except pd.ValidationError as e:
        raise ConfigError(f"invalid run configuration:\n{e}") from e
