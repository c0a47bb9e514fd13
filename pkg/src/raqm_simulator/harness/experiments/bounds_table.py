"""Tables of the efficiency-aware classical bound."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from raqm_simulator.classical_bounds.bounds import (
    BoundParams,
    coherent_bound,
    coherent_bound_with_efficiency,
    nqubit_bound,
)
from raqm_simulator.harness.experiments.base_experiment import BaseExperiment
from raqm_simulator.memory.cells import iter_slots
from raqm_simulator.memory.efficiency_map import slot_efficiency
from raqm_simulator.settings import ExperimentConfig
from raqm_simulator.utils import frame_to_csv

_logger = logging.getLogger(__name__)

GRID_COLUMNS = [
    "mu",
    "eta",
    "n_min",
    "gamma",
    "eta_C",
    "bound",
    "coherent_bound",
    "single_photon_bound",
]


@dataclass(frozen=True)
class BoundsTable:
    """Bounds over a (mu, eta) grid and over the slots of the array."""

    grid: pd.DataFrame
    slots: pd.DataFrame


def bounds_grid(mu_grid: Sequence[float], eta_grid: Sequence[float]) -> pd.DataFrame:
    """Tabulate the efficiency-aware bound for every ``(mu, eta)`` pair."""
    if not mu_grid or not eta_grid:
        _logger.error("Received an empty bounds grid.")
        raise ValueError("The mu and eta grids must not be empty.")
    rows = []
    for mu in mu_grid:
        unlimited = coherent_bound(mu)
        for eta in eta_grid:
            solution = coherent_bound_with_efficiency(BoundParams(mu=mu, eta=eta))
            rows.append(
                {
                    "mu": mu,
                    "eta": eta,
                    **solution.model_dump(),
                    "coherent_bound": unlimited,
                    "single_photon_bound": nqubit_bound(1),
                }
            )
    return pd.DataFrame(rows, columns=GRID_COLUMNS)


def slot_bounds(config: ExperimentConfig) -> pd.DataFrame:
    """Tabulate the bound of every slot at its efficiency after the configured storage time."""
    efficiency_map = config.efficiency_map()
    params = config.memory_params()
    rows = []
    for slot in iter_slots():
        efficiency = slot_efficiency(efficiency_map, slot, config.storage_time_us, params)
        row = {"slot": str(slot), "row": slot.row, "pair": slot.pair, "efficiency": efficiency}
        if efficiency > 0:
            row.update(
                coherent_bound_with_efficiency(
                    BoundParams(mu=config.mu, eta=efficiency)
                ).model_dump()
            )
        rows.append(row)
    return pd.DataFrame(
        rows,
        columns=["slot", "row", "pair", "efficiency", "n_min", "gamma", "eta_C", "bound"],
    )


def run_bounds_table(
    config: ExperimentConfig,
    mu_grid: Optional[Sequence[float]] = None,
    eta_grid: Optional[Sequence[float]] = None,
) -> BoundsTable:
    """Return the grid table and the per-slot table of the classical bound."""
    grid = bounds_grid(
        config.mu_grid() if mu_grid is None else mu_grid,
        config.eta_grid() if eta_grid is None else eta_grid,
    )
    return BoundsTable(grid=grid, slots=slot_bounds(config))


class BoundsTableExperiment(BaseExperiment):
    """Classical bounds over a parameter grid and the array."""

    experiment_name = "bounds"

    def _generate_results(self) -> BoundsTable:
        return run_bounds_table(self._config)

    def _write_results(self, results: BoundsTable, output_folder: Path) -> List[Path]:
        return [
            frame_to_csv(output_folder / "bounds_table.csv", results.grid, self.metadata),
            frame_to_csv(output_folder / "slot_bounds.csv", results.slots, self.metadata),
        ]

    def _summarize(self, results: BoundsTable) -> Dict[str, Any]:
        return {
            "grid_rows": len(results.grid),
            "max_slot_bound": float(results.slots["bound"].max()),
            "min_slot_bound": float(results.slots["bound"].min()),
        }
