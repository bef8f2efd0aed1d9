import numpy as np
import pytest

from oseplan.fixtures import (
    housing_part,
    seed_database,
    seed_tools,
    six_type_part,
)


@pytest.fixture(scope="session")
def housing():
    return housing_part()


@pytest.fixture(scope="session")
def six_types():
    return six_type_part()


@pytest.fixture(scope="session")
def db():
    return seed_database()


@pytest.fixture(scope="session")
def tools():
    return seed_tools()


@pytest.fixture(scope="session")
def housing_transform(housing):
    from oseplan.transform import transform_part

    return transform_part(housing)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform random rotation matrix (QR of a Gaussian matrix)."""
    m = rng.normal(size=(3, 3))
    q, r = np.linalg.qr(m)
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
