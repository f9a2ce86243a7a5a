import numpy as np
import pytest

from steinmm import load_mites, load_runoff


@pytest.fixture(scope="session")
def runoff():
    return load_runoff()


@pytest.fixture(scope="session")
def mites():
    return load_mites()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240607)
