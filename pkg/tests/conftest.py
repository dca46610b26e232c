"""Shared fixtures: bundled network parameters and small datasets."""

import numpy as np
import pytest

from wenocad import cli, network
from wenocad.training import dataset as wdata


@pytest.fixture(scope="session")
def cadnn1_params():
    strategy = cli.load_strategy("weno3-cadnn1")
    return strategy.params


@pytest.fixture(scope="session")
def cadnn2_params():
    strategy = cli.load_strategy("weno3-cadnn2")
    return strategy.params


@pytest.fixture(scope="session")
def random_params():
    return network.init_params(seed=123)


@pytest.fixture(scope="session")
def small_dataset():
    """A deterministic slice of the full training set, one of each kind."""
    full = wdata.generate_dataset(seed=3)
    rng = np.random.default_rng(7)
    idx = rng.choice(len(full), size=400, replace=False)
    return wdata.Dataset(
        stencils=full.stencils[idx],
        labels=full.labels[idx],
        kinds=full.kinds[idx],
        families=full.families[idx],
        seed=3,
    )
