import os

import pytest
from hypothesis import HealthCheck, settings

from trivext.golden import a2_algebra, a3_algebra, negative_algebra
from trivext.linalg import Field

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def Q():
    return Field.rationals()


@pytest.fixture(scope="session")
def F2():
    return Field.prime(2)


@pytest.fixture(scope="session")
def a2():
    return a2_algebra()


@pytest.fixture(scope="session")
def a3():
    return a3_algebra()


@pytest.fixture(scope="session")
def a3rel():
    return negative_algebra()
