"""Per-cell retrieval efficiency from click statistics, and its storage-time dependence."""

import logging
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from raqm_simulator.harness.experiments.base_experiment import BaseExperiment
from raqm_simulator.harness.rng import StreamDomain, stream
from raqm_simulator.harness.workers import map_items
from raqm_simulator.memory.cells import GRID_COLS, GRID_ROWS, CellAddress, QubitSlot
from raqm_simulator.memory.efficiency_map import (
    EfficiencyMap,
    larmor_envelope,
    retrieval_efficiency,
    save_efficiency_map,
    slot_efficiency,
)
from raqm_simulator.photonics.detector import (
    click_probability,
    intrinsic_efficiency_from_clicks,
    intrinsic_efficiency_std_error,
    sample_clicks,
)
from raqm_simulator.photonics.source import sample_photon_number
from raqm_simulator.settings import ExperimentConfig
from raqm_simulator.utils import FLOAT_FORMAT, frame_to_csv, grid_to_csv

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EfficiencyScan:
    """15 x 14 maps of the efficiency scan.

    ``intrinsic`` has the coupling and detector losses divided out, ``detected``
    is the raw click probability and ``std_error`` the binomial error of
    ``intrinsic``.
    """

    intrinsic: np.ndarray
    detected: np.ndarray
    std_error: np.ndarray
    storage_time_us: float


def _click_fraction(
    config: ExperimentConfig, survival: float, rng_key: Tuple[int, ...], domain: StreamDomain
) -> float:
    detector = config.detector()
    if config.analytic:
        return click_probability(config.mu * survival, detector)
    rng = stream(config.seed, domain, *rng_key)
    photons = sample_photon_number(config.mu, rng, size=config.efficiency_shots)
    return float(np.mean(sample_clicks(photons, survival, detector, rng)))


def _scan_row(
    row: int, config: ExperimentConfig, efficiency_map: EfficiencyMap
) -> np.ndarray:
    params = config.memory_params()
    detector = config.detector()
    results = np.empty((3, GRID_COLS))
    for col in range(GRID_COLS):
        eta = retrieval_efficiency(
            efficiency_map, CellAddress(row=row, col=col), config.storage_time_us, params
        )
        fraction = _click_fraction(config, eta, (row, col), StreamDomain.efficiency_scan)
        results[:, col] = (
            intrinsic_efficiency_from_clicks(fraction, config.mu, detector),
            fraction,
            intrinsic_efficiency_std_error(
                fraction, config.efficiency_shots, config.mu, detector
            ),
        )
    _logger.info(f"Scanned row {row + 1} of {GRID_ROWS}.")
    return results


def run_efficiency_scan(config: ExperimentConfig) -> EfficiencyScan:
    """Estimate the retrieval efficiency of every cell from its click statistics."""
    efficiency_map = config.efficiency_map()
    evaluate = partial(_scan_row, config=config, efficiency_map=efficiency_map)
    rows = np.stack(map_items(evaluate, range(GRID_ROWS), workers=config.workers), axis=1)
    return EfficiencyScan(
        intrinsic=rows[0],
        detected=rows[1],
        std_error=rows[2],
        storage_time_us=config.storage_time_us,
    )


def run_storage_time_scan(
    config: ExperimentConfig, slot: QubitSlot, times_us: Sequence[float]
) -> pd.DataFrame:
    """Return the retrieval efficiency of ``slot`` over the storage times ``times_us``.

    Each row holds the model efficiency (mean of both rails), the Larmor
    envelope and the estimate from ``efficiency_shots`` pulses. In analytic
    mode the estimate equals the model and the error is zero.
    """
    efficiency_map = config.efficiency_map()
    params = config.memory_params()
    detector = config.detector()
    rows = []
    for index, time_us in enumerate(times_us):
        model = slot_efficiency(efficiency_map, slot, time_us, params)
        if config.analytic:
            estimate, std_err = model, 0.0
        else:
            fraction = _click_fraction(
                config, model, (slot.index, index), StreamDomain.storage_scan
            )
            estimate = intrinsic_efficiency_from_clicks(fraction, config.mu, detector)
            std_err = intrinsic_efficiency_std_error(
                fraction, config.efficiency_shots, config.mu, detector
            )
        rows.append(
            {
                "storage_time_us": float(time_us),
                "larmor_envelope": larmor_envelope(time_us, params),
                "retrieval_efficiency": model,
                "retrieval_estimate": estimate,
                "std_err": std_err,
            }
        )
    _logger.debug(f"Scanned {len(rows)} storage times of slot {slot}.")
    return pd.DataFrame(rows)


class EfficiencyScanExperiment(BaseExperiment):
    """Click-statistics scan over all 210 cells."""

    experiment_name = "efficiency-map"

    def _generate_results(self) -> EfficiencyScan:
        return run_efficiency_scan(self._config)

    def _write_results(self, results: EfficiencyScan, output_folder: Path) -> List[Path]:
        files = [output_folder / "efficiency_map.csv"]
        save_efficiency_map(
            EfficiencyMap(np.clip(results.intrinsic, 0.0, 1.0), t_ref_us=results.storage_time_us),
            files[0],
            metadata=self.metadata,
            float_format=FLOAT_FORMAT,
        )
        files.append(
            grid_to_csv(output_folder / "detected_click_map.csv", results.detected, self.metadata)
        )
        files.append(
            grid_to_csv(output_folder / "efficiency_std_map.csv", results.std_error, self.metadata)
        )
        return files

    def _summarize(self, results: EfficiencyScan) -> Dict[str, Any]:
        return {
            "max_efficiency": float(results.intrinsic.max()),
            "min_efficiency": float(results.intrinsic.min()),
            "mean_efficiency": float(results.intrinsic.mean()),
        }


class StorageTimeScanExperiment(BaseExperiment):
    """Memory lifetime and Larmor revivals of one slot."""

    experiment_name = "storage-scan"

    def _generate_results(self) -> pd.DataFrame:
        return run_storage_time_scan(
            self._config, self._config.scanned_slot(), self._config.scan_times()
        )

    def _write_results(self, results: pd.DataFrame, output_folder: Path) -> List[Path]:
        metadata = {**self.metadata, "slot": self._config.scan_slot.replace(" ", "")}
        return [frame_to_csv(output_folder / "storage_time_scan.csv", results, metadata)]

    def _summarize(self, results: pd.DataFrame) -> Dict[str, Any]:
        best = results.loc[results["retrieval_estimate"].idxmax()]
        return {
            "best_storage_time_us": float(best["storage_time_us"]),
            "best_efficiency": float(best["retrieval_estimate"]),
        }
