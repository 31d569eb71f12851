import os

import numpy as np
import pytest

from vdge import create_app
from vdge.services import DenseStates, MpsStates


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: campaign-scale check, runs only with VDGE_RUN_SLOW=1')


def pytest_collection_modifyitems(config, items):
    if os.environ.get('VDGE_RUN_SLOW') == '1':
        return
    skip_slow = pytest.mark.skip(reason='set VDGE_RUN_SLOW=1 to run')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def app():
    """Create application for testing"""
    app = create_app('testing')

    with app.app_context():
        yield app


@pytest.fixture
def runner(app):
    """Create test CLI runner"""
    return app.test_cli_runner()


@pytest.fixture
def rng():
    """Seeded generator so failures are reproducible"""
    return np.random.default_rng(20240607)


@pytest.fixture
def ghz3():
    return DenseStates.make_ghz(3)


@pytest.fixture
def w3():
    return DenseStates.make_w(3)


@pytest.fixture
def perturbed_w_mps(rng):
    """Six-site W chain with lambda = 0.1 noise"""
    return MpsStates.perturb_mps(MpsStates.mps_w(6), 0.1, rng)
