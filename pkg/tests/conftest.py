import numpy as np
import pytest

from hardyrep.builder import build_ac_representing_measure
from hardyrep.gamma import gamma4


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def built_g4():
    """Representing measure built for the level-5 quaternary spectrum."""
    return build_ac_representing_measure(gamma4(5), 100, 0.5, 0.5)


def disc_points(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    t = rng.uniform(0, 2 * np.pi, n)
    return r * np.exp(1j * t)
