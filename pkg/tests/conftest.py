import warnings

import numpy as np
import pytest

from annulus_green import Annulus, ConditioningWarning


@pytest.fixture
def dom3():
    return Annulus(3, 0.5)


@pytest.fixture
def dom4():
    return Annulus(4, 0.5)


@pytest.fixture
def thin():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        return Annulus(3, 0.99)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_unit(rng, n):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)
