"""Shared fixtures for the raqm_simulator tests."""

import logging

import numpy as np
import pytest

from raqm_simulator.memory.efficiency_map import EfficiencyMap, MemoryParams


@pytest.fixture(autouse=True)
def restore_root_logger():
    """Drop handlers installed by CLI invocations so later tests do not log into closed streams."""
    handlers = list(logging.root.handlers)
    level = logging.root.level
    yield
    for handler in logging.root.handlers:
        if handler not in handlers:
            handler.close()
    logging.root.handlers = handlers
    logging.root.setLevel(level)


@pytest.fixture()
def rng():
    """Return a seeded generator."""
    return np.random.default_rng(1234)


@pytest.fixture()
def uniform_map():
    """Return an array with 10% retrieval efficiency in every cell."""
    return EfficiencyMap.uniform(0.1)


@pytest.fixture()
def ideal_params():
    """Return a storage channel without decoherence or phase drift."""
    return MemoryParams(p_dep=0.0)
