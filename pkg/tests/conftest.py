import numpy as np
import pytest

from rankmra import default_table


@pytest.fixture(scope="session")
def table():
    """Alpha table up to size 6; covers everything but the size-8 bounds."""
    return default_table(6)


@pytest.fixture(scope="session")
def big_table():
    """Full-size alpha table (size 8); built once, ~8 s."""
    return default_table(8)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
