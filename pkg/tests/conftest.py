import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from bshell import broom, maximal_building_set, minimal_building_set  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def bm():
    """The broom with its minimal building set {0, 1, 2, 3, 123}."""
    return minimal_building_set(broom())


@pytest.fixture
def bM():
    """The broom with all nonempty flats as building set."""
    return maximal_building_set(broom())
