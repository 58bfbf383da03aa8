import random

import pytest
from hypothesis import HealthCheck, settings

from dglapair import catalog as cat
from dglapair.artin import make_artin

settings.register_profile("exact", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")


@pytest.fixture(scope="session")
def entries():
    return {name: cat.load(name) for name in cat.catalog_list()}


@pytest.fixture(params=cat.catalog_list())
def entry(request):
    return cat.load(request.param)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def dual():
    return make_artin(["eps"], 2)


@pytest.fixture(scope="session")
def eps3():
    return make_artin(["eps"], 3)


@pytest.fixture(scope="session")
def two_var():
    return make_artin(["s", "t"], 3)
