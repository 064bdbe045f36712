"""
Pytest configuration and shared fixtures
Tiny random datasets, simulated datasets and their solver workspaces
"""

import numpy as np
import pytest

from src.config import reset_settings
from src.data.simulation import simulate
from src.estimator.workspace import precompute
from src.models import ScenarioKind, SimulationScenario
from tests.factories import random_dataset


@pytest.fixture(autouse=True)
def fresh_settings():
    """Every test starts from settings read from the current environment"""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def solver_caps(monkeypatch):
    """Raise inner pass caps so tight tolerances are reached"""
    monkeypatch.setenv("FREG_MAX_GROUP_PASSES", "20000")
    monkeypatch.setenv("FREG_MAX_COORDINATE_PASSES", "20000")
    reset_settings()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def tiny_dataset(rng):
    """Function-on-function data: n1 = 5, n2 = 4, T = 8"""
    return random_dataset(rng, n1=5, n2=4, T=8, p=0)


@pytest.fixture
def tiny_mixed_dataset(rng):
    """Mixed data with p = 2 vector covariates: n1 = 5, n2 = 4, T = 10"""
    return random_dataset(rng, n1=5, n2=4, T=10, p=2)


@pytest.fixture
def tiny_workspace(tiny_dataset):
    return precompute(tiny_dataset)


@pytest.fixture
def tiny_mixed_workspace(tiny_mixed_dataset):
    return precompute(tiny_mixed_dataset)


@pytest.fixture
def simulated_a():
    """Scenario A draw with n = 5 and 30 subjects, p = 0"""
    scenario = SimulationScenario(kind=ScenarioKind.A_EXPONENTIAL, q=5, kappa=1.0, p=0, seed=7)
    return simulate(scenario, 5, 5, 30)


@pytest.fixture
def simulated_mixed():
    """Scenario A draw with p = 3 vector covariates"""
    scenario = SimulationScenario(kind=ScenarioKind.A_EXPONENTIAL, q=5, kappa=2.0, p=3, seed=11)
    return simulate(scenario, 6, 6, 40)
