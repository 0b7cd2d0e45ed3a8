import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hopfcoh.bimodule import regular_bimodule
from hopfcoh.hopf import cached_algebra

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def kz2_f2():
    return cached_algebra("kZ2", 2)


@pytest.fixture(scope="session")
def kz2_f3():
    return cached_algebra("kZ2", 3)


@pytest.fixture(scope="session")
def h4():
    return cached_algebra("sweedler", 5)


@pytest.fixture(scope="session")
def A2(kz2_f2):
    return regular_bimodule(kz2_f2)


@pytest.fixture(scope="session")
def A3(kz2_f3):
    return regular_bimodule(kz2_f3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
