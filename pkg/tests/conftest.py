import numpy as np
import pytest

from proxy import Trial


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def make_trial():
    """Factory for random trials with balanced arms inside every stratum."""

    def factory(n=200, num_strata=3, p=2, seed=0, effect=2.0, noise=1.0):
        rng = np.random.default_rng(seed)
        stratum = np.arange(n) % num_strata + 1
        a = np.zeros(n, dtype=int)
        for k in range(1, num_strata + 1):
            rows = np.flatnonzero(stratum == k)
            a[rng.permutation(rows)[: rows.size // 2]] = 1
        x = rng.normal(size=(n, p))
        y = (
            1.0
            + x @ np.linspace(1.0, 2.0, p)
            + 0.5 * stratum
            + effect * a
            + noise * rng.normal(size=n)
        )
        return Trial(y, a, stratum, x)

    return factory
