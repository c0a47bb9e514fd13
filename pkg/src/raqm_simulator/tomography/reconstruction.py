"""Linear-inversion state reconstruction and fidelity estimation."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from raqm_simulator.quantum_state.states import (
    BlochVector,
    DensityMatrix,
    PureQubit,
    bloch_from_density,
    density_from_bloch,
    fidelity,
)
from raqm_simulator.tomography.measurement import Basis, CountsTable

_logger = logging.getLogger(__name__)

DEFAULT_RESAMPLES = 1000
MIN_RESAMPLES = 100
BLOCH_ORDER = (Basis.X, Basis.Y, Basis.Z)


class TomographyError(ValueError):
    """Raised for counts that cannot be inverted."""


@dataclass(frozen=True)
class TomographyResult:
    """Reconstructed state, its fidelity with the target and the standard error."""

    rho: DensityMatrix
    fidelity: float
    std_dev: float


def _project_to_ball(r: np.ndarray) -> np.ndarray:
    """Scale Bloch vectors longer than one back onto the sphere (last axis)."""
    norm = np.linalg.norm(r, axis=-1, keepdims=True)
    return np.where(norm > 1.0, r / np.maximum(norm, 1.0), r)


def bloch_estimate(counts: CountsTable) -> np.ndarray:
    """Return the raw (unprojected) ``(rx, ry, rz)`` estimate."""
    r = []
    for basis in BLOCH_ORDER:
        basis_counts = counts[basis]
        if basis_counts.total <= 0:
            _logger.error(f"No counts registered in basis {basis.value}.")
            raise TomographyError(f"Basis {basis.value} has zero total counts.")
        r.append((basis_counts.n_plus - basis_counts.n_minus) / basis_counts.total)
    return np.array(r)


def reconstruct(counts: CountsTable) -> DensityMatrix:
    """Reconstruct ``rho = (I + r . sigma)/2``, projecting unphysical ``r`` onto the sphere."""
    rx, ry, rz = _project_to_ball(bloch_estimate(counts))
    return density_from_bloch(BlochVector(float(rx), float(ry), float(rz)))


def _target_axis(target: PureQubit) -> np.ndarray:
    return bloch_from_density(target.density_matrix()).as_array()


def bootstrap_std(
    counts: CountsTable,
    target: PureQubit,
    resamples: int,
    rng: np.random.Generator,
) -> float:
    """Return the bootstrap standard deviation of the fidelity estimate.

    Every basis is resampled as a binomial draw with the observed number of
    photons and the observed ``n_plus`` frequency.
    """
    r = np.empty((resamples, 3))
    for axis, basis in enumerate(BLOCH_ORDER):
        basis_counts = counts[basis]
        total = int(round(basis_counts.total))
        p_plus = basis_counts.n_plus / basis_counts.total
        n_plus = rng.binomial(total, p_plus, size=resamples)
        r[:, axis] = (2 * n_plus - total) / total
    fidelities = (1.0 + _project_to_ball(r) @ _target_axis(target)) / 2
    return float(np.std(fidelities, ddof=1))


def delta_method_std(counts: CountsTable, target: PureQubit) -> float:
    """Return the binomial standard error of the fidelity, propagated to first order."""
    r = bloch_estimate(counts)
    axis = _target_axis(target)
    totals = np.array([counts[basis].total for basis in BLOCH_ORDER])
    variance = np.sum((axis / 2) ** 2 * np.clip(1.0 - r**2, 0.0, None) / totals)
    return float(np.sqrt(variance))


def estimate_fidelity(
    counts: CountsTable,
    target: PureQubit,
    resamples: int = DEFAULT_RESAMPLES,
    rng: Optional[np.random.Generator] = None,
    analytic: bool = False,
) -> TomographyResult:
    """Reconstruct the state and return its fidelity with ``target`` plus an error bar.

    In analytic mode ``counts`` hold expectation values and the error bar is the
    first-order binomial error instead of a bootstrap.
    """
    if resamples < MIN_RESAMPLES:
        raise ValueError(f"Need at least {MIN_RESAMPLES} resamples, got {resamples}.")
    rho = reconstruct(counts)
    if analytic:
        std_dev = delta_method_std(counts, target)
    else:
        std_dev = bootstrap_std(counts, target, resamples, rng or np.random.default_rng())
    return TomographyResult(rho=rho, fidelity=fidelity(target, rho), std_dev=std_dev)
