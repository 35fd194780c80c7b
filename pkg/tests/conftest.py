import os

import pytest
from hypothesis import HealthCheck, settings

from orbifold import fixtures
from orbifold.mf import TensorRingPair
from orbifold.problem import load_problem
from orbifold.ring import make_potential

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def x3_pair():
    return TensorRingPair(make_potential("x^3", {"x": "2/3"}), make_potential("y^3", {"y": "2/3"}))


@pytest.fixture(scope="session")
def problems():
    return {name: load_problem(fixtures.path(name + ".problem"))
            for name in ("x3_y3", "q10_e14", "q12_e18", "q18_e30", "q12_e18_seeded", "q18_e30_seeded")}
