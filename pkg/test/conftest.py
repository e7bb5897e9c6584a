# -*- coding: utf-8 -*-
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.model import Params  # noqa: E402

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "scenarios")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: grid experiments that take more than a few seconds")


@pytest.fixture
def heat_params():
    """p = q = 2, n = 2: the linear heat equation."""
    return Params(n=2, p=2.0, q=2.0)


@pytest.fixture
def singular_params():
    return Params(n=2, p=2.0, q=1.5)


@pytest.fixture
def supercritical_params():
    """n = 2, p = q = 1.5 lies inside 2n/(n+1) < p < 2."""
    return Params(n=2, p=1.5, q=1.5)


@pytest.fixture
def scenario_path():
    def resolve(name):
        return os.path.join(SCENARIO_DIR, name)
    return resolve
