import numpy as np
import pytest

from src.config import load_config
from src.graphs.families import FamilySpec, family_distances


@pytest.fixture(scope="session")
def cfg():
    return load_config()


@pytest.fixture
def rng(cfg):
    return np.random.default_rng(cfg["project"]["seed"])


@pytest.fixture(scope="session")
def distances():
    """Cached family distance matrices keyed by spec string."""
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = family_distances(FamilySpec.parse(text))
        return cache[text]

    return get


@pytest.fixture(autouse=True)
def _no_budget_override(monkeypatch):
    monkeypatch.delenv("METRICDIM_BUDGET", raising=False)
