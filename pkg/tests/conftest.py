import numpy as np
import pytest

from djtransmon.config import Numerics


@pytest.fixture(scope="session")
def numerics() -> Numerics:
    return Numerics()


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(20260809)
