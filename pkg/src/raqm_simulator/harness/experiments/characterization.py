"""Storage fidelity of all 105 cell pairs against their classical bounds."""

import logging
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from raqm_simulator.classical_bounds.bounds import (
    BoundParams,
    coherent_bound_with_efficiency,
    margin,
)
from raqm_simulator.harness.experiments.base_experiment import BaseExperiment
from raqm_simulator.harness.reports import RunReport, RunSummary, SlotRecord
from raqm_simulator.harness.rng import StreamDomain, stream
from raqm_simulator.harness.workers import map_items
from raqm_simulator.memory.cell_array import StorageChannel
from raqm_simulator.memory.cells import (
    GRID_COLS,
    GRID_ROWS,
    QubitSlot,
    iter_slots,
)
from raqm_simulator.memory.efficiency_map import slot_efficiency
from raqm_simulator.settings import ExperimentConfig, config_hash
from raqm_simulator.tomography.pipeline import average_six_state_fidelity
from raqm_simulator.utils import dict_to_json, frame_to_csv, grid_to_csv

_logger = logging.getLogger(__name__)

HEATMAPS = {
    "fidelity_map.csv": "mean_fidelity",
    "fidelity_std_map.csv": "std_dev",
    "bound_map.csv": "classical_bound",
    "margin_map.csv": "margin",
}


def characterize_slot(
    slot: QubitSlot, config: ExperimentConfig, channel: StorageChannel
) -> SlotRecord:
    """Run the six-state pipeline on ``slot`` and compare it with its classical bound."""
    six_state = average_six_state_fidelity(
        channel,
        slot,
        shots=config.shots,
        rng_for_state=partial(stream, config.seed, StreamDomain.characterization, slot.index),
        resamples=config.resamples,
        analytic=config.analytic,
    )
    efficiency = slot_efficiency(
        channel.efficiency_map, slot, channel.storage_time_us, channel.params
    )
    record: Dict[str, Any] = {
        "slot": str(slot),
        "row": slot.row,
        "pair": slot.pair,
        "mean_fidelity": six_state.mean_fidelity,
        "std_dev": six_state.std_dev,
        "retrieval_prob": six_state.retrieval_prob,
        "efficiency": efficiency,
        "per_state": {
            entry.state.label: entry.result.fidelity for entry in six_state.per_state
        },
    }
    if efficiency <= 0:
        _logger.warning(f"Slot {slot} retrieves nothing; no classical bound applies.")
        return SlotRecord(**record)

    solution = coherent_bound_with_efficiency(BoundParams(mu=config.mu, eta=efficiency))
    record.update(
        classical_bound=solution.bound,
        n_min=solution.n_min,
        gamma=solution.gamma,
        eta_C=solution.eta_C,
        margin=six_state.mean_fidelity - solution.bound,
    )
    if six_state.std_dev > 0:
        record["sigmas"] = margin(six_state.mean_fidelity, solution.bound, six_state.std_dev)[1]
    return SlotRecord(**record)


def _characterize_row(
    row: int, config: ExperimentConfig, channel: StorageChannel
) -> List[SlotRecord]:
    records = [
        characterize_slot(slot, config, channel) for slot in iter_slots() if slot.row == row
    ]
    _logger.info(f"Characterized row {row + 1} of {GRID_ROWS}.")
    return records


def summarize_records(records: List[SlotRecord]) -> RunSummary:
    """Return the array-wide mean fidelity, efficiency and smallest margin."""
    fidelities = np.array([record.mean_fidelity for record in records])
    errors = np.array([record.std_dev for record in records])
    margins = [record.margin for record in records if record.margin is not None]
    sigmas = [record.sigmas for record in records if record.sigmas is not None]
    return RunSummary(
        grand_mean_fidelity=float(fidelities.mean()),
        grand_std_dev=float(np.sqrt(np.sum(errors**2)) / len(errors)),
        mean_efficiency=float(np.mean([record.efficiency for record in records])),
        min_margin=min(margins) if margins else None,
        min_sigmas=min(sigmas) if sigmas else None,
        slots_above_bound=sum(value > 0 for value in margins),
    )


def run_characterization(config: ExperimentConfig) -> RunReport:
    """Characterize every slot of the array at the configured storage time."""
    channel = config.storage_channel()
    evaluate = partial(_characterize_row, config=config, channel=channel)
    rows = map_items(evaluate, range(GRID_ROWS), workers=config.workers)
    records = [record for row in rows for record in row]
    return RunReport(
        seed=config.seed,
        config_hash=config_hash(config),
        analytic=config.analytic,
        records=records,
        summary=summarize_records(records),
    )


def slot_heatmap(records: List[SlotRecord], field: str) -> np.ndarray:
    """Return a 15 x 14 grid with the value of ``field`` in both cells of each slot."""
    grid = np.full((GRID_ROWS, GRID_COLS), np.nan)
    for record in records:
        value: Optional[float] = getattr(record, field)
        if value is not None:
            grid[record.row, 2 * record.pair : 2 * record.pair + 2] = value
    return grid


def records_frame(records: List[SlotRecord]) -> pd.DataFrame:
    """Return one row per slot with the per-state fidelities as extra columns."""
    rows = []
    for record in records:
        row = record.model_dump(exclude={"per_state"})
        row.update({f"fidelity_{label}": value for label, value in record.per_state.items()})
        rows.append(row)
    return pd.DataFrame(rows)


class CharacterizationExperiment(BaseExperiment):
    """Six-state characterization of the whole array."""

    experiment_name = "characterize"

    def _generate_results(self) -> RunReport:
        return run_characterization(self._config)

    def _write_results(self, results: RunReport, output_folder: Path) -> List[Path]:
        files = [output_folder / "characterization.json"]
        dict_to_json(files[0], results.model_dump(mode="json"))
        files.append(
            frame_to_csv(
                output_folder / "characterization_slots.csv",
                records_frame(results.records),
                self.metadata,
            )
        )
        for file_name, field in HEATMAPS.items():
            files.append(
                grid_to_csv(
                    output_folder / file_name,
                    slot_heatmap(results.records, field),
                    self.metadata,
                )
            )
        return files

    def _summarize(self, results: RunReport) -> Dict[str, Any]:
        return results.summary.model_dump()
