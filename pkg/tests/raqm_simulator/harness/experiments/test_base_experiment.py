"""Module to test the base_experiment.py."""

from pathlib import Path
from typing import List

import pytest

from raqm_simulator.harness.experiments.base_experiment import (
    BaseExperiment,
    ExperimentResponse,
)
from raqm_simulator.settings import ExperimentConfig, config_hash


def concrete_base_experiment(name: str, config: ExperimentConfig):
    """Replace all abstract methods by concrete ones."""

    class ConcreteBaseExperiment(BaseExperiment):
        experiment_name = name

        def _generate_results(self) -> dict:
            return {"answer": 42}

        def _write_results(self, results: dict, output_folder: Path) -> List[Path]:
            path = output_folder / "answer.txt"
            path.write_text(str(results["answer"]))
            return [path]

    return ConcreteBaseExperiment(config)


class TestBaseExperiment:
    """Class to collect tests for the BaseExperiment."""

    @pytest.fixture()
    def base_experiment(self):
        """Initialize a concrete BaseExperiment element to test it."""
        return concrete_base_experiment("base_test", ExperimentConfig(seed=11))

    def test_experiment_name_is_base(self):
        """Tests if we get a ValueError in case a subclass has not changed experiment_name."""
        with pytest.raises(
            ValueError,
            match="Subclass must define an experiment_name not equal to 'base'.",
        ):
            concrete_base_experiment("base", ExperimentConfig())

    def test_get_config(self, base_experiment):
        """Test if retrieving the right configuration."""
        assert base_experiment.get_config().seed == 11

    def test_metadata(self, base_experiment):
        """Test the seed and hash written into result files."""
        assert base_experiment.metadata == {
            "seed": 11,
            "config_hash": config_hash(ExperimentConfig(seed=11)),
        }

    def test_run(self, base_experiment, tmp_path):
        """Test that a run creates the folder and reports the written files."""
        output_folder = tmp_path / "nested" / "results"
        response = base_experiment.run(output_folder)
        assert isinstance(response, ExperimentResponse)
        assert response.success is True
        assert response.report == {}
        assert response.files == [str(output_folder / "answer.txt")]
        assert (output_folder / "answer.txt").read_text() == "42"
