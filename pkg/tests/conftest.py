# coding: utf-8

"""
shared fixtures: the models used throughout the figures
"""

import os
from datetime import timedelta

import numpy as np
import pytest
from hypothesis import Verbosity, settings

from dampedpolariton.modules.response_models import (
    LosslessModel,
    LorentzCutoffModel,
    PointScatterCutoffModel,
)

# HYPOTHESIS_PROFILE=ci for extended deadlines
settings.register_profile("default", deadline=timedelta(milliseconds=2000), max_examples=50)
settings.register_profile("ci", deadline=None, max_examples=200)
settings.register_profile("dev", deadline=None, max_examples=10)
settings.register_profile("debug", deadline=None, max_examples=10, verbosity=Verbosity.verbose)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

np.seterr(all="warn")


@pytest.fixture
def lossless():
    return LosslessModel(omega_c=0.5)


@pytest.fixture
def lorentz():
    """Lorentz model with Ω = 10, ω_c = 0.5, κ₀ = 0.01."""
    return LorentzCutoffModel(omega_c=0.5, kappa0=0.01, cutoff=10.0)


@pytest.fixture
def lorentz_nocutoff():
    return LorentzCutoffModel(omega_c=0.5, kappa0=0.01)


@pytest.fixture
def point():
    """Point scatterers with Ω = 10, ω_c = 0.5, κ = 0.01."""
    return PointScatterCutoffModel(omega_c=0.5, kappa=0.01, cutoff=10.0)


@pytest.fixture(params=["lossless", "lorentz", "lorentz_nocutoff", "point"])
def any_model(request):
    return request.getfixturevalue(request.param)


@pytest.fixture(params=["lorentz", "lorentz_nocutoff", "point"])
def lossy_model(request):
    return request.getfixturevalue(request.param)
