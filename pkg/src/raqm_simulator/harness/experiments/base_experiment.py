"""Python Script for Base Experiment."""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List

from pydantic import BaseModel

from raqm_simulator.settings import ExperimentConfig, config_hash

_logger = logging.getLogger(__name__)


class ExperimentResponse(BaseModel):
    """Get Experiment Responses."""

    success: bool = True
    report: Dict[str, Any] = {}
    files: List[str] = []


class BaseExperiment(ABC):
    """An abstract base class for harness experiments writing result files."""

    experiment_name = "base"

    def __init__(self, config: ExperimentConfig):
        """Initialize a BaseExperiment instance."""
        self._config = config
        self._metadata = {"seed": config.seed, "config_hash": config_hash(config)}

    def __init_subclass__(cls, **kwargs):
        """Initialize the subclass."""
        super().__init_subclass__(**kwargs)
        if cls.experiment_name == "base":
            raise ValueError(
                "Subclass must define an experiment_name not equal to 'base'."
            )

    def get_config(self) -> ExperimentConfig:
        """Get the configuration of the experiment."""
        return self._config

    @property
    def metadata(self) -> Dict[str, object]:
        """Return the seed and config hash embedded in every output file."""
        return dict(self._metadata)

    def run(self, output_folder: Path) -> ExperimentResponse:
        """Run the experiment and write its result files to ``output_folder``.

        Args:
        ----
            output_folder (Path): Folder for the result files, created if missing.

        Returns:
        -------
            ExperimentResponse: Summary figures and the list of written files.

        """
        output_folder = Path(output_folder)
        output_folder.mkdir(parents=True, exist_ok=True)
        _logger.info(
            f"Running {self.experiment_name} with seed {self._metadata['seed']} "
            f"and config {self._metadata['config_hash']}."
        )
        results = self._generate_results()
        files = self._write_results(results, output_folder)
        _logger.info(f"Done with {self.experiment_name}, wrote {len(files)} files.")
        return ExperimentResponse(
            report=self._summarize(results), files=[str(path) for path in files]
        )

    @abstractmethod
    def _generate_results(self) -> Any:
        """Compute the experiment results from the configuration."""

    @abstractmethod
    def _write_results(self, results: Any, output_folder: Path) -> List[Path]:
        """Persist ``results`` and return the written paths."""

    def _summarize(self, results: Any) -> Dict[str, Any]:
        """Return the headline figures shown after a run."""
        return {}
