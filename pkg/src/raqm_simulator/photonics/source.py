"""Weak coherent pulse source."""

import logging
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from raqm_simulator.quantum_state.states import PureQubit, complementary_states

_logger = logging.getLogger(__name__)

DEFAULT_MEAN_PHOTONS = 0.5


@dataclass(frozen=True)
class CoherentPulse:
    """Weak coherent pulse whose single-photon component carries a dual-rail qubit."""

    mean_photons: float = DEFAULT_MEAN_PHOTONS
    state: PureQubit = field(default_factory=lambda: complementary_states()[0])

    def __post_init__(self):
        """Reject negative mean photon numbers."""
        if self.mean_photons < 0:
            raise ValueError(
                f"Mean photon number must be non-negative, got {self.mean_photons}."
            )


def sample_photon_number(
    mu: float, rng: np.random.Generator, size: Union[int, None] = None
) -> Union[int, np.ndarray]:
    """Draw Poissonian photon numbers of mean ``mu`` from ``rng``."""
    if mu < 0:
        _logger.error(f"Mean photon number {mu} is negative.")
        raise ValueError(f"Mean photon number must be non-negative, got {mu}.")
    if size is None:
        return int(rng.poisson(mu))
    return rng.poisson(mu, size=size)
