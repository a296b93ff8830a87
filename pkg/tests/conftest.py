import numpy as np
import pytest

from pettylab import fixtures


@pytest.fixture
def rng():
    return np.random.default_rng(20240814)


@pytest.fixture(scope="session")
def cube():
    return fixtures.cube()


@pytest.fixture(scope="session")
def octahedron():
    return fixtures.octahedron()


@pytest.fixture(scope="session")
def tetrahedron():
    return fixtures.tetrahedron()
