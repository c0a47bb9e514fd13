"""Classical (measure-and-prepare) fidelity bounds for weak coherent inputs."""

import logging
from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import factorial
from scipy.stats import poisson

from raqm_simulator.quantum_state.states import PureQubit, complementary_states

_logger = logging.getLogger(__name__)

PHOTON_CUTOFF = 200
TAIL_TOLERANCE = 1e-15
EFFICIENCY_MATCH_TOLERANCE = 1e-9
SMALL_MU = 1e-2
TAYLOR_TERMS = 8


class BoundConvergenceError(ValueError):
    """Raised when the photon-number series cannot be truncated safely."""


class BoundParams(BaseModel):
    """Input pulse and memory efficiency entering the classical bound.

    Attributes
    ----------
    mu : float
        Mean photon number of the weak coherent input.
    eta : float
        Retrieval efficiency the classical device has to mimic.

    """

    model_config = ConfigDict(frozen=True)

    mu: float = Field(gt=0)
    eta: float = Field(gt=0, le=1)


class BoundSolution(BaseModel):
    """Optimal classical strategy for a given ``(mu, eta)``."""

    model_config = ConfigDict(frozen=True)

    n_min: int = Field(ge=0)
    gamma: float = Field(ge=0)
    eta_C: float
    bound: float


def _check_mu(mu: float) -> None:
    if mu <= 0:
        _logger.error(f"Mean photon number {mu} is not positive.")
        raise ValueError(f"Mean photon number must be positive, got {mu}.")


def poisson_pmf(mu: float, n: int) -> float:
    """Return the Poissonian weight ``P(mu, n) = exp(-mu) mu^n / n!``."""
    _check_mu(mu)
    if n < 0:
        raise ValueError(f"Photon number must be non-negative, got {n}.")
    return float(poisson.pmf(n, mu))


def _photon_distribution(mu: float) -> np.ndarray:
    """Return ``P(mu, n)`` for ``n = 0..PHOTON_CUTOFF`` after checking the tail."""
    truncated = float(poisson.sf(PHOTON_CUTOFF, mu))
    if truncated > TAIL_TOLERANCE:
        _logger.error(f"Poisson tail {truncated} above cutoff for mu={mu}.")
        raise BoundConvergenceError(
            f"Photon-number series does not converge below n={PHOTON_CUTOFF} for mu={mu}."
        )
    return poisson.pmf(np.arange(PHOTON_CUTOFF + 1), mu)


def _clone_fidelity(n: np.ndarray) -> np.ndarray:
    return (n + 1.0) / (n + 2.0)


def six_state_components(theta: float, phi: float) -> Dict[str, float]:
    """Return the measure-and-prepare fidelity for each complementary input.

    The classical device measures in the basis
    ``|psi_+> = cos(theta/2)|U> + exp(i phi) sin(theta/2)|D>``,
    ``|psi_-> = -sin(theta/2)|U> + exp(i phi) cos(theta/2)|D>`` and re-prepares
    the observed basis state, so an input ``|psi>`` scores
    ``sum_k |<psi_k|psi>|^4``.
    """
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    phase = np.exp(1j * phi)
    outcomes = [
        PureQubit(complex(c), phase * s),
        PureQubit(complex(-s), phase * c),
    ]
    components = {}
    for state in complementary_states():
        probabilities = [abs(np.vdot(out.ket, state.ket)) ** 2 for out in outcomes]
        components[state.label] = float(sum(p * p for p in probabilities))
    return components


def six_state_average(theta: float, phi: float) -> float:
    """Return the equal-weight average of :func:`six_state_components` (always 2/3)."""
    return float(np.mean(list(six_state_components(theta, phi).values())))


def nqubit_bound(n: int) -> float:
    """Return the optimal classical fidelity ``(N+1)/(N+2)`` for N identical qubits."""
    if n < 1:
        _logger.error(f"Qubit number {n} is below one.")
        raise ValueError(f"Number of copies must be at least 1, got {n}.")
    return (n + 1) / (n + 2)


def _half_minus_kernel(mu: float) -> float:
    """Return ``1/2 - (mu + expm1(-mu)) / mu^2`` without cancellation at small ``mu``."""
    if mu < SMALL_MU:
        # 1/2 - sum_k (-mu)^k / (k+2)!  =  mu/3! - mu^2/4! + mu^3/5! - ...
        k = np.arange(1, TAYLOR_TERMS + 1)
        return float(-np.sum((-mu) ** k / factorial(k + 2)))
    return 0.5 - (mu + np.expm1(-mu)) / mu**2


def coherent_bound(mu: float) -> float:
    """Return the classical bound for a weak coherent input of mean photon number ``mu``.

    Closed form of ``sum_{n>=1} (n+1)/(n+2) P(mu, n) / (1 - P(mu, 0))``,
    rearranged as ``(1/2 - (mu + expm1(-mu))/mu^2 - expm1(-mu)/2) / (1 - P(mu, 0))``
    so that both numerator terms are positive.
    """
    _check_mu(mu)
    one_minus_p0 = -np.expm1(-mu)
    numerator = _half_minus_kernel(mu) + one_minus_p0 / 2
    return float(numerator / one_minus_p0)


def coherent_bound_series(mu: float, cutoff: int = 100) -> float:
    """Sum the photon-number series of :func:`coherent_bound` up to ``cutoff``."""
    _check_mu(mu)
    n = np.arange(1, cutoff + 1)
    weights = poisson.pmf(n, mu)
    return float(np.sum(_clone_fidelity(n) * weights) / -np.expm1(-mu))


def coherent_bound_with_efficiency(params: BoundParams) -> BoundSolution:
    """Return the classical bound conditioned on registering an output photon.

    The classical device answers only for photon numbers above ``n_min`` and,
    with weight ``gamma``, for ``n_min`` itself, so that its success
    probability ``eta_C`` equals the memory efficiency ``eta``:

    * ``n_min`` is the smallest ``i`` with ``sum_{n>=i+1} P <= (1-P_0) eta``,
    * ``gamma = (1-P_0) eta - sum_{n>=n_min+1} P``,
    * the bound is the fidelity of that strategy averaged over the answered
      photon numbers.
    """
    pmf = _photon_distribution(params.mu)
    tails = np.cumsum(pmf[::-1])[::-1]
    one_minus_p0 = tails[1]
    target = one_minus_p0 * params.eta

    candidates = np.nonzero(tails[1:] <= target)[0]
    if len(candidates) == 0:
        _logger.error(f"No photon cutoff found for {params}.")
        raise BoundConvergenceError(f"No admissible n_min below {PHOTON_CUTOFF} for {params}.")
    n_min = int(candidates[0])
    upper = float(tails[n_min + 1])
    gamma = max(float(target - upper), 0.0)

    n = np.arange(PHOTON_CUTOFF + 1)
    weighted_tail = float(np.sum((_clone_fidelity(n) * pmf)[n_min + 1 :]))
    numerator = _clone_fidelity(n_min) * gamma + weighted_tail
    denominator = gamma + upper
    eta_c = float(denominator / one_minus_p0)
    if abs(eta_c - params.eta) > EFFICIENCY_MATCH_TOLERANCE:
        _logger.error(f"Effective classical efficiency {eta_c} differs from {params.eta}.")
        raise BoundConvergenceError(
            f"Classical efficiency {eta_c} does not reproduce eta={params.eta}."
        )
    solution = BoundSolution(
        n_min=n_min, gamma=gamma, eta_C=eta_c, bound=float(numerator / denominator)
    )
    _logger.debug(f"Classical bound for {params}: {solution}.")
    return solution


def margin(measured_fidelity: float, bound: float, std_dev: float) -> Tuple[float, float]:
    """Return the excess of a measured fidelity over a bound, absolute and in sigmas."""
    if std_dev <= 0:
        _logger.error(f"Standard deviation {std_dev} is not positive.")
        raise ValueError(f"Standard deviation must be positive, got {std_dev}.")
    difference = measured_fidelity - bound
    return difference, difference / std_dev
