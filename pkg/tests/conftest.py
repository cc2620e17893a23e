"""
Shared fixtures: the builtin models, the shipped balanced HKT model and their curvature bundles.
"""
from pathlib import Path

import numpy as np
import pytest

from qktlab.services.models import builtin, load, model_bundle

DATA = Path(__file__).resolve().parents[1] / "qktlab" / "data"
BUILTINS = ("flat8", "hopf8", "solv8")


@pytest.fixture(scope="session")
def models():
    out = {name: builtin(name) for name in BUILTINS}
    out["balanced_hkt8"] = load(DATA / "balanced_hkt8.json")
    return out


@pytest.fixture(scope="session")
def bundles(models):
    return {name: model_bundle(model) for name, model in models.items()}


@pytest.fixture
def rng():
    return np.random.default_rng(42)
