"""Write, storage and read-out of dual-rail qubits in the cell array."""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

import numpy as np

from raqm_simulator.memory.cells import QubitSlot, neighbouring_slots
from raqm_simulator.memory.efficiency_map import (
    EfficiencyMap,
    MemoryParams,
    retrieval_efficiency,
)
from raqm_simulator.photonics.source import CoherentPulse
from raqm_simulator.quantum_state.states import DensityMatrix, PureQubit, depolarize

_logger = logging.getLogger(__name__)


class SlotOccupiedError(ValueError):
    """Raised when writing into a slot that still holds an unread excitation."""


class ReadBeforeWriteError(ValueError):
    """Raised when reading a slot that is empty or before its write time."""


@dataclass(frozen=True)
class StoredExcitation:
    """Spin-wave excitation holding one qubit in a slot."""

    slot: QubitSlot
    state: DensityMatrix
    write_time: float

    def __post_init__(self):
        """Reject negative write times."""
        if self.write_time < 0:
            raise ValueError(f"Write time must be non-negative, got {self.write_time}.")


def read(
    exc: StoredExcitation,
    time: float,
    efficiency_map: EfficiencyMap,
    params: MemoryParams,
) -> Tuple[DensityMatrix, float]:
    """Retrieve a stored excitation at ``time`` (us).

    Returns the state conditioned on a retrieved photon and the retrieval
    probability. Rail losses, the differential phase and the depolarization
    are all applied here.
    """
    if time < exc.write_time:
        _logger.error(f"Read at {time} us precedes the write at {exc.write_time} us.")
        raise ReadBeforeWriteError(
            f"Read time {time} us is before write time {exc.write_time} us."
        )
    storage_time = time - exc.write_time
    eta_u = retrieval_efficiency(efficiency_map, exc.slot.u_cell, storage_time, params)
    eta_d = retrieval_efficiency(efficiency_map, exc.slot.d_cell, storage_time, params)
    kraus = np.diag([np.sqrt(eta_u), np.sqrt(eta_d) * np.exp(1j * params.dphi * storage_time)])
    unnormalized = kraus @ exc.state.matrix @ kraus.conj().T
    retrieval_prob = float(np.trace(unnormalized).real)
    if retrieval_prob <= 0.0:
        _logger.debug(f"Nothing retrieved from slot {exc.slot} after {storage_time} us.")
        return DensityMatrix.maximally_mixed(), 0.0
    conditional = unnormalized / retrieval_prob
    conditional = (conditional + conditional.conj().T) / 2
    return depolarize(DensityMatrix(conditional), params.p_dep), min(retrieval_prob, 1.0)


def calibrate_depolarization(target_avg_fidelity: float) -> float:
    """Return the depolarization probability giving ``target_avg_fidelity`` on balanced rails."""
    if not 0.5 < target_avg_fidelity <= 1.0:
        _logger.error(f"Target fidelity {target_avg_fidelity} outside (0.5, 1].")
        raise ValueError(
            f"Target fidelity must lie in (0.5, 1], got {target_avg_fidelity}."
        )
    return 2.0 * (1.0 - target_avg_fidelity)


def apply_crosstalk(
    array_state: Mapping[QubitSlot, StoredExcitation], addressed: QubitSlot, eps: float
) -> Dict[QubitSlot, StoredExcitation]:
    """Depolarize the occupied neighbours of ``addressed`` with weight ``eps``."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"Crosstalk weight must lie in [0, 1], got {eps}.")
    updated = dict(array_state)
    if eps == 0.0:
        return updated
    for neighbour in neighbouring_slots(addressed):
        exc = updated.get(neighbour)
        if exc is not None:
            updated[neighbour] = StoredExcitation(
                slot=exc.slot, state=depolarize(exc.state, eps), write_time=exc.write_time
            )
    return updated


class MemoryArray:
    """The occupied slots of the 210-cell memory.

    Mutations are serialized; parallel simulations use separate instances.
    """

    def __init__(self, efficiency_map: EfficiencyMap, params: MemoryParams):
        """Initialize an empty array."""
        self.efficiency_map = efficiency_map
        self.params = params
        self._stored: Dict[QubitSlot, StoredExcitation] = {}
        self._lock = threading.Lock()

    @property
    def occupied(self) -> Dict[QubitSlot, StoredExcitation]:
        """Return a snapshot of the stored excitations."""
        with self._lock:
            return dict(self._stored)

    def write(self, slot: QubitSlot, pulse: CoherentPulse, time: float) -> StoredExcitation:
        """Store the qubit carried by ``pulse`` into ``slot`` at ``time`` (us)."""
        with self._lock:
            if slot in self._stored:
                _logger.error(f"Slot {slot} is still occupied.")
                raise SlotOccupiedError(f"Slot {slot} already holds an unread qubit.")
            exc = StoredExcitation(
                slot=slot, state=pulse.state.density_matrix(), write_time=time
            )
            self._stored = apply_crosstalk(self._stored, slot, self.params.crosstalk_eps)
            self._stored[slot] = exc
            _logger.debug(f"Wrote qubit {pulse.state.label or '?'} to slot {slot} at {time} us.")
            return exc

    def read(self, slot: QubitSlot, time: float) -> Tuple[DensityMatrix, float]:
        """Retrieve and free ``slot`` at ``time`` (us)."""
        with self._lock:
            exc = self._stored.get(slot)
            if exc is None:
                _logger.error(f"Slot {slot} is empty.")
                raise ReadBeforeWriteError(f"Slot {slot} holds no qubit.")
            result = read(exc, time, self.efficiency_map, self.params)
            del self._stored[slot]
            self._stored = apply_crosstalk(self._stored, slot, self.params.crosstalk_eps)
            return result


@dataclass(frozen=True)
class StorageChannel:
    """End-to-end write, store and read of one qubit in an otherwise empty array."""

    efficiency_map: EfficiencyMap
    params: MemoryParams
    storage_time_us: float = 1.38
    mean_photons: float = 0.5

    def transmit(self, slot: QubitSlot, state: PureQubit) -> Tuple[DensityMatrix, float]:
        """Return the conditional retrieved state and the retrieval probability."""
        array = MemoryArray(self.efficiency_map, self.params)
        array.write(slot, CoherentPulse(mean_photons=self.mean_photons, state=state), 0.0)
        return array.read(slot, self.storage_time_us)
