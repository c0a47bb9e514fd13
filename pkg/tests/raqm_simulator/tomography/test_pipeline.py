"""Module to test the pipeline.py."""

import numpy as np
import pytest

from raqm_simulator.memory.cell_array import StorageChannel
from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.memory.efficiency_map import MemoryParams
from raqm_simulator.quantum_state.states import STATE_LABELS
from raqm_simulator.tomography.pipeline import average_six_state_fidelity

SLOT = QubitSlot.at(7, 6)


@pytest.fixture
def channel(uniform_map):
    """Return a balanced channel calibrated to an average fidelity of 0.9445."""
    return StorageChannel(uniform_map, MemoryParams(p_dep=0.111))


def _streams(seed):
    return lambda index: np.random.default_rng([seed, index])


def test_analytic_average(channel):
    """Test the six-state average in expectation."""
    result = average_six_state_fidelity(channel, SLOT, analytic=True)
    assert result.mean_fidelity == pytest.approx(0.9445, abs=1e-6)
    assert [entry.state.label for entry in result.per_state] == list(STATE_LABELS)
    assert result.retrieval_prob == pytest.approx(0.1)
    assert result.std_dev > 0


def test_sampled_average(channel):
    """Test the sampled average against the calibrated fidelity."""
    result = average_six_state_fidelity(channel, SLOT, shots=500, rng_for_state=_streams(3))
    assert result.mean_fidelity == pytest.approx(0.9445, abs=5 * result.std_dev)
    assert result.std_dev < 0.01


def test_sampled_is_reproducible(channel):
    """Test that the same per-state streams give the same average."""
    first = average_six_state_fidelity(channel, SLOT, rng_for_state=_streams(8))
    second = average_six_state_fidelity(channel, SLOT, rng_for_state=_streams(8))
    assert first.mean_fidelity == second.mean_fidelity


@pytest.mark.parametrize("kwargs", [{"shots": 0, "analytic": True}, {"analytic": False}])
def test_invalid_arguments(channel, kwargs):
    """Test that shots must be positive and sampling needs streams."""
    with pytest.raises(ValueError):
        average_six_state_fidelity(channel, SLOT, **kwargs)
