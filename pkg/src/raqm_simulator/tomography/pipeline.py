"""Six-state storage-fidelity measurement of one qubit slot."""

import logging
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from raqm_simulator.memory.cell_array import StorageChannel
from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.quantum_state.states import PureQubit, complementary_states
from raqm_simulator.tomography.measurement import measure_all
from raqm_simulator.tomography.reconstruction import (
    DEFAULT_RESAMPLES,
    TomographyResult,
    estimate_fidelity,
)

_logger = logging.getLogger(__name__)

DEFAULT_SHOTS = 500


@dataclass(frozen=True)
class StateFidelity:
    """Tomography outcome for one input state."""

    state: PureQubit
    result: TomographyResult
    retrieval_prob: float


@dataclass(frozen=True)
class SixStateResult:
    """Equal-weight average over the six complementary inputs."""

    mean_fidelity: float
    std_dev: float
    per_state: List[StateFidelity]

    @property
    def retrieval_prob(self) -> float:
        """Return the retrieval probability averaged over the inputs."""
        return float(np.mean([entry.retrieval_prob for entry in self.per_state]))


def measure_state_fidelity(
    channel: StorageChannel,
    slot: QubitSlot,
    state: PureQubit,
    shots: int,
    rng: np.random.Generator,
    resamples: int = DEFAULT_RESAMPLES,
    analytic: bool = False,
) -> StateFidelity:
    """Store ``state`` in ``slot``, retrieve it and run tomography on ``shots`` photons per basis."""
    rho, retrieval_prob = channel.transmit(slot, state)
    counts = measure_all(rho, shots, rng=rng, analytic=analytic)
    result = estimate_fidelity(counts, state, resamples=resamples, rng=rng, analytic=analytic)
    return StateFidelity(state=state, result=result, retrieval_prob=retrieval_prob)


def average_six_state_fidelity(
    channel: StorageChannel,
    slot: QubitSlot,
    shots: int = DEFAULT_SHOTS,
    rng_for_state: Callable[[int], np.random.Generator] = None,
    resamples: int = DEFAULT_RESAMPLES,
    analytic: bool = False,
) -> SixStateResult:
    """Run the storage and tomography pipeline for the six complementary inputs.

    ``rng_for_state(k)`` supplies an independent stream for input ``k`` so the
    result does not depend on the evaluation order.
    """
    if shots <= 0:
        raise ValueError(f"Shots must be positive, got {shots}.")
    if rng_for_state is None and not analytic:
        raise ValueError("Sampled tomography needs a random stream per input state.")
    per_state = [
        measure_state_fidelity(
            channel,
            slot,
            state,
            shots,
            None if analytic else rng_for_state(index),
            resamples=resamples,
            analytic=analytic,
        )
        for index, state in enumerate(complementary_states())
    ]
    fidelities = np.array([entry.result.fidelity for entry in per_state])
    errors = np.array([entry.result.std_dev for entry in per_state])
    return SixStateResult(
        mean_fidelity=float(fidelities.mean()),
        std_dev=float(np.sqrt(np.sum(errors**2)) / len(errors)),
        per_state=per_state,
    )
