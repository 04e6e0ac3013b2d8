import os

import pytest
from hypothesis import HealthCheck, settings

from hyperortho import make_system
from hyperortho.suites import PARAMETER_GRID

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GRID = [(case.value, a, b) for case, pairs in PARAMETER_GRID.items() for a, b in pairs]


@pytest.fixture(params=GRID, ids=lambda p: f"{p[0]}({p[1]},{p[2]})")
def grid_system(request):
    return make_system(*request.param)
