"""Python Script to register and call the experiment factory."""

import logging
from typing import Callable

from raqm_simulator.harness.experiments.base_experiment import BaseExperiment
from raqm_simulator.harness.experiments.bounds_table import BoundsTableExperiment
from raqm_simulator.harness.experiments.characterization import (
    CharacterizationExperiment,
)
from raqm_simulator.harness.experiments.efficiency_scan import (
    EfficiencyScanExperiment,
    StorageTimeScanExperiment,
)
from raqm_simulator.harness.experiments.random_access import RandomAccessExperiment
from raqm_simulator.settings import ExperimentConfig

_experiments: dict = {}
_logger = logging.getLogger(__name__)


def register_experiment(experiment_name: str) -> Callable:
    """Register a factory building the experiment ``experiment_name`` from a config."""

    def decorator(experiment_factory: Callable) -> Callable:
        _experiments[experiment_name] = experiment_factory
        return experiment_factory

    return decorator


@register_experiment("characterize")
def characterization_experiment(config: ExperimentConfig) -> CharacterizationExperiment:
    """Create and return a CharacterizationExperiment instance."""
    return CharacterizationExperiment(config)


@register_experiment("efficiency-map")
def efficiency_scan_experiment(config: ExperimentConfig) -> EfficiencyScanExperiment:
    """Create and return an EfficiencyScanExperiment instance."""
    return EfficiencyScanExperiment(config)


@register_experiment("random-access")
def random_access_experiment(config: ExperimentConfig) -> RandomAccessExperiment:
    """Create and return a RandomAccessExperiment instance."""
    return RandomAccessExperiment(config)


@register_experiment("bounds")
def bounds_table_experiment(config: ExperimentConfig) -> BoundsTableExperiment:
    """Create and return a BoundsTableExperiment instance."""
    return BoundsTableExperiment(config)


@register_experiment("storage-scan")
def storage_time_scan_experiment(config: ExperimentConfig) -> StorageTimeScanExperiment:
    """Create and return a StorageTimeScanExperiment instance."""
    return StorageTimeScanExperiment(config)


def available_experiments() -> list:
    """Return the registered experiment names."""
    return sorted(_experiments)


def get_experiment(experiment_name: str, config: ExperimentConfig) -> BaseExperiment:
    """Get an experiment instance by name.

    Args:
    ----
        experiment_name (str): Name the experiment was registered under.
        config (ExperimentConfig): Settings of the run.

    Returns:
    -------
        BaseExperiment: Instance of the registered experiment.

    """
    _logger.debug(f"The experiment is: {experiment_name}")
    experiment_class = _experiments.get(experiment_name.lower())
    if experiment_class:
        return experiment_class(config)
    _logger.error(f"Invalid experiment name: {experiment_name}")
    raise KeyError(
        f"Invalid experiment name: {experiment_name}, expected one of {available_experiments()}"
    )
