import numpy as np
import pytest

from cdgforge.corpus import standard_corpus


@pytest.fixture(scope="session")
def C():
    return standard_corpus(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
