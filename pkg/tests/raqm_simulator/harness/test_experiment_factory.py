"""Module to test the experiment_factory.py."""

import pytest

from raqm_simulator.harness.experiment_factory import available_experiments, get_experiment
from raqm_simulator.harness.experiments.bounds_table import BoundsTableExperiment
from raqm_simulator.harness.experiments.characterization import CharacterizationExperiment
from raqm_simulator.harness.experiments.efficiency_scan import (
    EfficiencyScanExperiment,
    StorageTimeScanExperiment,
)
from raqm_simulator.harness.experiments.random_access import RandomAccessExperiment
from raqm_simulator.settings import ExperimentConfig


class TestGetExperiment:
    """Class to collect tests for the get_experiment function."""

    @pytest.mark.parametrize(
        "name, experiment_class",
        [
            ("characterize", CharacterizationExperiment),
            ("efficiency-map", EfficiencyScanExperiment),
            ("random-access", RandomAccessExperiment),
            ("bounds", BoundsTableExperiment),
            ("storage-scan", StorageTimeScanExperiment),
        ],
    )
    def test_get_experiment(self, name, experiment_class):
        """Test if we can retrieve every registered experiment."""
        experiment = get_experiment(name, ExperimentConfig())
        assert isinstance(experiment, experiment_class)
        assert experiment.experiment_name == name

    def test_get_experiment_non_standard_case(self):
        """Test if we can retrieve an experiment even if the name is not lowercase."""
        assert isinstance(get_experiment("Bounds", ExperimentConfig()), BoundsTableExperiment)

    def test_get_non_existing_experiment(self):
        """Test for an error message for an invalid experiment name."""
        with pytest.raises(KeyError, match="Invalid experiment name") as error:
            get_experiment("thisdoesnotexist", ExperimentConfig())
        assert "random-access" in str(error.value)


def test_available_experiments():
    """Test the sorted list of registered names."""
    assert available_experiments() == [
        "bounds",
        "characterize",
        "efficiency-map",
        "random-access",
        "storage-scan",
    ]
