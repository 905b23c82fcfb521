import numpy as np
import pytest

from wordlab import catalog_spec, generate


@pytest.fixture(scope="session")
def words():
    """Catalog prefixes shared across test modules, generated once."""
    cache = {}

    def get(name, length=10_000):
        key = (name, length)
        if key not in cache:
            cache[key] = generate(catalog_spec(name, length))
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
