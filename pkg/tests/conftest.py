import random

import pytest
from hypothesis import HealthCheck, settings

from homres import ChainComplex, IntMatrix

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def z_to_2z() -> ChainComplex:
    """``Z --2--> Z`` in degrees 0 and 1."""
    return ChainComplex({0: 1, 1: 1}, {0: IntMatrix([[2]])})


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)
