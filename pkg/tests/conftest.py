import numpy as np
import pytest

from ladder.integrals import ModelCoefficients, paper_coefficients

PAPER_ETA_STAR = 0.91515


@pytest.fixture
def paper():
    return paper_coefficients()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_coefficients(rng, ubar_max=0.1):
    """Entries in [-3, 3], Ubar in [0, ubar_max]."""
    eps1, eps2, v1, v2, u = rng.uniform(-3.0, 3.0, size=5)
    return ModelCoefficients(eps1=eps1, eps2=eps2, V1=v1, V2=v2, U=u, Ubar=rng.uniform(0.0, ubar_max), source="random")


@pytest.fixture
def make_coefficients():
    def make(**values):
        defaults = dict(eps1=0.0, eps2=0.0, V1=0.0, V2=0.0, U=0.0, Ubar=0.0)
        return ModelCoefficients(**{**defaults, **values}, source="test")

    return make
