"""Random-access demonstration: three qubits written in turn and read in arbitrary orders."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from raqm_simulator.classical_bounds.bounds import (
    BoundParams,
    coherent_bound,
    coherent_bound_with_efficiency,
    margin,
    nqubit_bound,
)
from raqm_simulator.control.compiler import compile_program
from raqm_simulator.control.program import (
    EventKind,
    PulseProgram,
    random_access_schedule,
    snap_time,
)
from raqm_simulator.harness.experiments.base_experiment import BaseExperiment
from raqm_simulator.harness.reports import QubitRecord, RandomAccessReport
from raqm_simulator.harness.rng import StreamDomain, stream
from raqm_simulator.memory.cell_array import MemoryArray
from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.memory.efficiency_map import slot_efficiency
from raqm_simulator.photonics.source import CoherentPulse
from raqm_simulator.quantum_state.states import (
    DensityMatrix,
    PureQubit,
    complementary_states,
)
from raqm_simulator.settings import ExperimentConfig, config_hash
from raqm_simulator.tomography.measurement import measure_all
from raqm_simulator.tomography.reconstruction import TomographyResult, estimate_fidelity
from raqm_simulator.utils import dict_to_json, frame_to_csv

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RetrievedQubit:
    """State read back from the array together with what was written."""

    qubit_id: str
    slot: QubitSlot
    written: PureQubit
    rho: DensityMatrix
    retrieval_prob: float
    storage_time_us: float


def simulate_program(
    program: PulseProgram, array: MemoryArray, mean_photons: float
) -> Dict[str, RetrievedQubit]:
    """Play ``program`` on ``array`` and return the retrieved qubits by id.

    Events run in time order; simultaneous events keep their program order.
    """
    pending = {}
    retrieved = {}
    for event in sorted(program.events, key=lambda event: event.time_us):
        if event.kind == EventKind.write:
            array.write(
                event.slot,
                CoherentPulse(mean_photons=mean_photons, state=event.state),
                event.time_us,
            )
            pending[event.qubit_id] = event
            continue
        rho, retrieval_prob = array.read(event.slot, event.time_us)
        write = pending.pop(event.qubit_id)
        retrieved[event.qubit_id] = RetrievedQubit(
            qubit_id=event.qubit_id,
            slot=event.slot,
            written=write.state,
            rho=rho,
            retrieval_prob=retrieval_prob,
            storage_time_us=snap_time(event.time_us - write.time_us),
        )
    return retrieved


def _qubit_record(
    config: ExperimentConfig,
    order_name: str,
    qubit_id: str,
    outcomes: List[Tuple[str, TomographyResult, RetrievedQubit]],
    storage_time_us: float,
) -> QubitRecord:
    slot = outcomes[0][2].slot
    fidelities = np.array([result.fidelity for _, result, _ in outcomes])
    errors = np.array([result.std_dev for _, result, _ in outcomes])
    mean_fidelity = float(fidelities.mean())
    std_dev = float(np.sqrt(np.sum(errors**2)) / len(errors))
    efficiency = slot_efficiency(
        config.efficiency_map(), slot, storage_time_us, config.memory_params()
    )
    efficiency_bound: Optional[float] = None
    difference: Optional[float] = None
    sigmas: Optional[float] = None
    if efficiency > 0:
        efficiency_bound = coherent_bound_with_efficiency(
            BoundParams(mu=config.mu, eta=efficiency)
        ).bound
        difference = mean_fidelity - efficiency_bound
        if std_dev > 0:
            sigmas = margin(mean_fidelity, efficiency_bound, std_dev)[1]
    return QubitRecord(
        read_order=order_name,
        qubit_id=qubit_id,
        slot=str(slot),
        storage_time_us=storage_time_us,
        retrieval_prob=float(np.mean([qubit.retrieval_prob for _, _, qubit in outcomes])),
        efficiency=efficiency,
        mean_fidelity=mean_fidelity,
        std_dev=std_dev,
        single_photon_bound=nqubit_bound(1),
        coherent_bound=coherent_bound(config.mu),
        efficiency_bound=efficiency_bound,
        margin=difference,
        sigmas=sigmas,
        per_state={label: result.fidelity for label, result, _ in outcomes},
    )


def run_random_access(
    config: ExperimentConfig, read_orders: Optional[Sequence[Sequence[str]]] = None
) -> RandomAccessReport:
    """Write the configured qubits, read them back in every order and run tomography.

    Every read order is repeated for each of the six complementary inputs,
    all qubits carrying the same input in one repetition.
    """
    orders = [tuple(str(label) for label in order) for order in (read_orders or config.orders())]
    slots = config.qubit_slots()
    params = config.memory_params()
    efficiency_map = config.efficiency_map()
    records: List[QubitRecord] = []
    schedules: Dict[str, dict] = {}
    for order_index, order in enumerate(orders):
        order_name = "-".join(order)
        outcomes = defaultdict(list)
        storage_times: Dict[str, float] = {}
        schedules[order_name] = {}
        for state_index, state in enumerate(complementary_states()):
            program = random_access_schedule(
                [(slot, state) for slot in slots],
                order,
                spacing=config.random_access_spacing,
                larmor_period_us=config.larmor_period_us,
            )
            schedule = compile_program(program, params, config.timing_mode)
            schedules[order_name][state.label] = schedule.to_json_dict()
            storage_times = dict(schedule.storage_times_us)
            retrieved = simulate_program(program, MemoryArray(efficiency_map, params), config.mu)
            for qubit_id, qubit in retrieved.items():
                rng = (
                    None
                    if config.analytic
                    else stream(
                        config.seed,
                        StreamDomain.random_access,
                        order_index,
                        int(qubit_id),
                        state_index,
                    )
                )
                counts = measure_all(qubit.rho, config.shots, rng=rng, analytic=config.analytic)
                result = estimate_fidelity(
                    counts,
                    state,
                    resamples=config.resamples,
                    rng=rng,
                    analytic=config.analytic,
                )
                outcomes[qubit_id].append((state.label, result, qubit))
        for qubit_id in sorted(outcomes, key=int):
            records.append(
                _qubit_record(
                    config, order_name, qubit_id, outcomes[qubit_id], storage_times[qubit_id]
                )
            )
        _logger.info(f"Finished read order {order_name}.")
    return RandomAccessReport(
        seed=config.seed,
        config_hash=config_hash(config),
        analytic=config.analytic,
        records=records,
        schedules=schedules,
    )


class RandomAccessExperiment(BaseExperiment):
    """Write three qubits and read them in the configured orders."""

    experiment_name = "random-access"

    def _generate_results(self) -> RandomAccessReport:
        return run_random_access(self._config)

    def _write_results(self, results: RandomAccessReport, output_folder: Path) -> List[Path]:
        files = [output_folder / "random_access.json"]
        dict_to_json(files[0], results.model_dump(mode="json"))
        frame = pd.DataFrame(
            [record.model_dump(exclude={"per_state"}) for record in results.records]
        )
        files.append(frame_to_csv(output_folder / "random_access.csv", frame, self.metadata))
        return files

    def _summarize(self, results: RandomAccessReport) -> Dict[str, Any]:
        margins = [record.margin for record in results.records if record.margin is not None]
        return {
            "qubits": len(results.records),
            "min_margin": min(margins) if margins else None,
            "all_above_bound": all(value > 0 for value in margins),
        }
