"""Projective measurements of retrieved qubits in the Z, X and Y bases."""

import logging
from enum import Enum
from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from raqm_simulator.quantum_state.states import (
    DensityMatrix,
    PureQubit,
    fidelity,
    state_by_label,
)

_logger = logging.getLogger(__name__)


class Basis(str, Enum):
    """Measurement basis selected by the read AODs."""

    Z = "Z"
    X = "X"
    Y = "Y"


BASIS_STATE_LABELS: Dict[Basis, Tuple[str, str]] = {
    Basis.Z: ("U", "D"),
    Basis.X: ("+", "-"),
    Basis.Y: ("R", "L"),
}


def plus_state(basis: Basis) -> PureQubit:
    """Return the eigenstate counted as ``n_plus`` in ``basis``."""
    return state_by_label(BASIS_STATE_LABELS[basis][0])


class BasisCounts(BaseModel):
    """Detector clicks for the two outcomes of one basis.

    Counts are floats so that expectation values can stand in for samples.
    """

    model_config = ConfigDict(frozen=True)

    n_plus: float = Field(ge=0)
    n_minus: float = Field(ge=0)

    @property
    def total(self) -> float:
        """Return the number of registered photons."""
        return self.n_plus + self.n_minus


class CountsTable(BaseModel):
    """Counts of all three bases for one retrieved state."""

    model_config = ConfigDict(frozen=True)

    Z: BasisCounts
    X: BasisCounts
    Y: BasisCounts

    def __getitem__(self, basis: Basis) -> BasisCounts:
        """Return the counts of ``basis``."""
        return getattr(self, Basis(basis).value)


def measure_basis(
    rho: DensityMatrix, basis: Basis, shots: int, rng: np.random.Generator
) -> Tuple[int, int]:
    """Sample ``shots`` registered photons measured in ``basis``."""
    if shots <= 0:
        raise ValueError(f"Shots must be positive, got {shots}.")
    p_plus = fidelity(plus_state(basis), rho)
    n_plus = int(rng.binomial(shots, p_plus))
    return n_plus, shots - n_plus


def expected_counts(rho: DensityMatrix, basis: Basis, shots: int) -> Tuple[float, float]:
    """Return the mean counts of :func:`measure_basis`."""
    p_plus = fidelity(plus_state(basis), rho)
    return shots * p_plus, shots * (1.0 - p_plus)


def measure_all(
    rho: DensityMatrix,
    shots: int,
    rng: np.random.Generator = None,
    analytic: bool = False,
) -> CountsTable:
    """Measure ``rho`` in the three bases, sampled or in expectation."""
    counts = {}
    for basis in Basis:
        if analytic:
            n_plus, n_minus = expected_counts(rho, basis, shots)
        else:
            n_plus, n_minus = measure_basis(rho, basis, shots, rng)
        counts[basis.value] = BasisCounts(n_plus=n_plus, n_minus=n_minus)
    return CountsTable(**counts)
