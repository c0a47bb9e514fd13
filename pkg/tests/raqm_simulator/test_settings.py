"""Module to test the settings.py."""

import pytest
from pydantic import ValidationError

from raqm_simulator.control.compiler import TimingMode
from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.settings import (
    ExperimentConfig,
    config_hash,
    load_config,
    parse_config_text,
)

CONFIG_TEXT = """
# weak coherent input
mu = 0.25
seed = 77   # master seed
timing_mode = warn
analytic = true
random_access_slots = 0,0; 1,2
"""


class TestExperimentConfig:
    """Class to collect tests for ExperimentConfig."""

    def test_defaults(self):
        """Test the default operating point."""
        config = ExperimentConfig()
        assert config.mu == 0.5
        assert config.depolarization == pytest.approx(0.111)
        assert config.memory_params().tau_us == 27.8
        assert config.detector().transmission == pytest.approx(0.65)
        assert config.qubit_slots() == [
            QubitSlot.at(3, 2),
            QubitSlot.at(7, 6),
            QubitSlot.at(11, 10),
        ]
        assert config.orders() == [("1", "2", "3"), ("3", "2", "1"), ("2", "1", "3")]
        assert config.scanned_slot() == QubitSlot.at(7, 6)

    def test_explicit_depolarization(self):
        """Test that p_dep overrides the calibration."""
        assert ExperimentConfig(p_dep=0.05).memory_params().p_dep == 0.05

    def test_scan_times(self):
        """Test the storage-time grid of the scan."""
        times = ExperimentConfig().scan_times()
        assert len(times) == 25
        assert times[0] == 0.0
        assert times[8] == 1.38
        assert times[-1] == 4.14

    def test_grids(self):
        """Test the bounds grids."""
        config = ExperimentConfig(bounds_mu_grid="0.5, 1", bounds_eta_grid="0.1,")
        assert config.mu_grid() == [0.5, 1.0]
        assert config.eta_grid() == [0.1]

    @pytest.mark.parametrize(
        "values",
        [
            {"unknown_key": 1},
            {"mu": 0},
            {"resamples": 50},
            {"eta_center": 0.01, "eta_edge": 0.02},
            {"random_access_slots": "3,2;3,2"},
            {"random_access_slots": "3"},
            {"read_orders": "1-x-3"},
            {"scan_slot": "7,6;3,2"},
            {"bounds_eta_grid": " , "},
            {"workers": 0},
        ],
    )
    def test_invalid(self, values):
        """Test that invalid settings are rejected at construction."""
        with pytest.raises(ValidationError):
            ExperimentConfig(**values)

    def test_frozen(self):
        """Test that settings cannot be changed after construction."""
        with pytest.raises(ValidationError):
            ExperimentConfig().seed = 3


class TestConfigHash:
    """Class to collect tests for config_hash."""

    def test_stable(self):
        """Test that equal settings hash equally."""
        assert config_hash(ExperimentConfig()) == config_hash(ExperimentConfig())
        assert len(config_hash(ExperimentConfig())) == 16

    def test_ignores_execution_settings(self, tmp_path):
        """Test that worker count and output folder do not change the hash."""
        assert config_hash(ExperimentConfig()) == config_hash(
            ExperimentConfig(workers=4, output_dir=tmp_path)
        )

    def test_result_settings_change_hash(self):
        """Test that the seed enters the hash."""
        assert config_hash(ExperimentConfig()) != config_hash(ExperimentConfig(seed=1))

    def test_map_file_contents_change_hash(self, tmp_path):
        """Test that rewriting the efficiency map file changes the hash."""
        path = tmp_path / "map.csv"
        config = ExperimentConfig(efficiency_map_path=path)
        path.write_text("0.1\n")
        first = config_hash(config)
        path.write_text("0.2\n")
        assert config_hash(config) != first


class TestLoadConfig:
    """Class to collect tests for reading configuration files."""

    def test_parse_config_text(self):
        """Test comments, blank lines and whitespace."""
        values = parse_config_text(CONFIG_TEXT)
        assert values["seed"] == "77"
        assert values["random_access_slots"] == "0,0; 1,2"

    def test_missing_equals(self):
        """Test that a line without '=' is rejected."""
        with pytest.raises(ValueError, match="line 2"):
            parse_config_text("mu = 0.5\nseed 7")

    def test_load_file_with_overrides(self, tmp_path):
        """Test that explicit values override the file and None is ignored."""
        path = tmp_path / "settings.conf"
        path.write_text(CONFIG_TEXT)
        config = load_config(path, seed=5, shots=None)
        assert config.mu == 0.25
        assert config.seed == 5
        assert config.shots == 500
        assert config.analytic is True
        assert config.timing_mode == TimingMode.warn
        assert config.qubit_slots() == [QubitSlot.at(0, 0), QubitSlot.at(1, 2)]

    def test_load_without_file(self):
        """Test that defaults apply without a file."""
        assert load_config() == ExperimentConfig()

    def test_missing_file(self, tmp_path):
        """Test that a missing file is reported."""
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "missing.conf")
