import os

import pytest
from hypothesis import HealthCheck, settings

from eulerlimit.model import GasModel, State

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("deep", max_examples=3000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# two-shock data used throughout the concentration experiments
TWO_SHOCK_LEFT = State(1.5, 1.5)
TWO_SHOCK_RIGHT = State(2.0, -0.5)


@pytest.fixture
def two_shock():
    return TWO_SHOCK_LEFT, TWO_SHOCK_RIGHT


@pytest.fixture(params=[1.3, 1.05, 2.5])
def gas(request):
    return GasModel(request.param)
