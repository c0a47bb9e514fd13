"""Module to test the efficiency_scan.py."""

import numpy as np
import pytest

from raqm_simulator.harness.experiments.efficiency_scan import (
    EfficiencyScanExperiment,
    StorageTimeScanExperiment,
    run_efficiency_scan,
    run_storage_time_scan,
)
from raqm_simulator.memory.cells import CellAddress, QubitSlot
from raqm_simulator.memory.efficiency_map import (
    load_efficiency_map,
    retrieval_efficiency,
    slot_efficiency,
)
from raqm_simulator.settings import ExperimentConfig

SLOT = QubitSlot.at(7, 6)


def _model_map(config: ExperimentConfig) -> np.ndarray:
    efficiency_map = config.efficiency_map()
    params = config.memory_params()
    return np.array(
        [
            [
                retrieval_efficiency(
                    efficiency_map, CellAddress(row=row, col=col), config.storage_time_us, params
                )
                for col in range(14)
            ]
            for row in range(15)
        ]
    )


class TestRunEfficiencyScan:
    """Class to collect tests for run_efficiency_scan."""

    def test_analytic_recovers_map(self):
        """Test that exact click probabilities invert to the model efficiencies."""
        config = ExperimentConfig(analytic=True)
        scan = run_efficiency_scan(config)
        assert scan.intrinsic.shape == (15, 14)
        np.testing.assert_allclose(scan.intrinsic, _model_map(config), atol=1e-9)
        assert np.all(scan.detected < scan.intrinsic)

    def test_sampled_within_error_bars(self):
        """Test every sampled cell against the model within five standard errors."""
        config = ExperimentConfig(efficiency_shots=20_000, seed=12)
        scan = run_efficiency_scan(config)
        deviation = np.abs(scan.intrinsic - _model_map(config))
        assert np.all(deviation <= 5 * scan.std_error)
        assert np.all(scan.std_error > 0)

    def test_workers_do_not_change_results(self):
        """Test that a parallel scan reproduces the serial one exactly."""
        config = ExperimentConfig(efficiency_shots=2_000, seed=1)
        serial = run_efficiency_scan(config)
        parallel = run_efficiency_scan(config.model_copy(update={"workers": 3}))
        np.testing.assert_array_equal(serial.intrinsic, parallel.intrinsic)

    def test_experiment_files(self, tmp_path):
        """Test that the written map loads back as an efficiency map."""
        config = ExperimentConfig(analytic=True, seed=2)
        response = EfficiencyScanExperiment(config).run(tmp_path)
        assert len(response.files) == 3
        loaded = load_efficiency_map(tmp_path / "efficiency_map.csv")
        assert loaded.t_ref_us == pytest.approx(1.38)
        np.testing.assert_allclose(loaded.eta, _model_map(config), atol=1e-9)
        assert response.report["max_efficiency"] == pytest.approx(0.1777, abs=0.005)
        header = (tmp_path / "detected_click_map.csv").read_text().splitlines()[0]
        assert header.startswith("# seed=2 config_hash=")


class TestStorageTimeScan:
    """Class to collect tests for the storage-time scan."""

    def test_analytic_scan(self):
        """Test revivals, decay and the half-period dark point."""
        config = ExperimentConfig(analytic=True)
        frame = run_storage_time_scan(config, SLOT, config.scan_times())
        assert len(frame) == 25
        by_time = frame.set_index("storage_time_us")
        params = config.memory_params()
        assert by_time.loc[1.38, "retrieval_efficiency"] == pytest.approx(
            slot_efficiency(config.efficiency_map(), SLOT, 1.38, params)
        )
        assert by_time.loc[0.69, "larmor_envelope"] == pytest.approx(0.0, abs=1e-12)
        revivals = by_time.loc[[0.0, 1.38, 2.76, 4.14], "retrieval_efficiency"].to_numpy()
        assert np.all(np.diff(revivals) < 0)
        np.testing.assert_allclose(np.diff(np.log(revivals)), -1.38 / 27.8)
        assert (frame["std_err"] == 0).all()

    def test_sampled_scan(self):
        """Test the sampled estimates against the model."""
        config = ExperimentConfig(efficiency_shots=20_000, seed=6)
        frame = run_storage_time_scan(config, SLOT, config.scan_times())
        deviation = (frame["retrieval_estimate"] - frame["retrieval_efficiency"]).abs()
        assert (deviation <= 5 * frame["std_err"] + 1e-9).all()

    def test_experiment(self, tmp_path):
        """Test the written scan and the best storage time."""
        config = ExperimentConfig(analytic=True, scan_slot="3,4", scan_max_periods=2)
        response = StorageTimeScanExperiment(config).run(tmp_path)
        lines = (tmp_path / "storage_time_scan.csv").read_text().splitlines()
        assert lines[0].endswith("slot=3,4")
        assert len(lines) == 2 + 17
        assert response.report["best_storage_time_us"] == 0.0
