import numpy as np
import pytest

from nsdispersion.thermo import FluidState


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def water():
    return FluidState(rho=997.0, T=298.0, mu=8.9e-4, lam=0.6, Cv=4138.6138613861385, gamma=1.01, c=1480.0)


@pytest.fixture
def air():
    return FluidState(rho=1.225, T=298.0, mu=1.81e-5, lam=0.026, Cv=717.0, gamma=1.4, c=340.0)
