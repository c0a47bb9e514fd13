"""Threshold single-photon detection behind the output fibre."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

_logger = logging.getLogger(__name__)


class DetectorModel(BaseModel):
    """Non-number-resolving photon counter and the path coupling in front of it.

    Attributes
    ----------
    quantum_efficiency : float
        Probability that a photon reaching the counter produces a click.
    dark_click_prob : float
        Probability of a background click per detection gate.
    coupling_efficiency : float
        Fibre coupling of the addressed optical path, 65% for every path of
        the array.

    """

    model_config = ConfigDict(frozen=True)

    quantum_efficiency: float = Field(default=1.0, ge=0, le=1)
    dark_click_prob: float = Field(default=0.0, ge=0, lt=1)
    coupling_efficiency: float = Field(default=0.65, ge=0, le=1)

    @property
    def transmission(self) -> float:
        """Return the combined coupling and detection efficiency."""
        return self.quantum_efficiency * self.coupling_efficiency


def click_probability(mean_photons_at_detector: float, det: DetectorModel) -> float:
    """Return ``1 - (1 - dark) exp(-qe coupling m)`` for a Poissonian arrival of mean ``m``."""
    if mean_photons_at_detector < 0:
        raise ValueError(
            f"Mean photon number must be non-negative, got {mean_photons_at_detector}."
        )
    no_click = (1.0 - det.dark_click_prob) * np.exp(
        -det.transmission * mean_photons_at_detector
    )
    return float(1.0 - no_click)


def sample_clicks(
    photon_numbers: np.ndarray,
    survival: float,
    det: DetectorModel,
    rng: np.random.Generator,
) -> np.ndarray:
    """Return a boolean click record for each gate.

    Each of the ``photon_numbers`` photons independently survives retrieval
    with probability ``survival`` and then the coupling and detection losses;
    one or more arriving photons, or a dark count, give a single click.
    """
    arriving = rng.binomial(photon_numbers, survival * det.transmission)
    dark = rng.random(size=np.shape(photon_numbers)) < det.dark_click_prob
    return (arriving > 0) | dark


def intrinsic_efficiency_from_clicks(
    click_fraction: float, mu: float, det: DetectorModel
) -> float:
    """Invert :func:`click_probability` to the retrieval efficiency of the memory."""
    if det.transmission == 0:
        raise ValueError("Cannot infer an efficiency through a zero-transmission path.")
    ratio = max((1.0 - click_fraction) / (1.0 - det.dark_click_prob), np.finfo(float).tiny)
    if ratio >= 1.0:
        return 0.0
    return float(-np.log(ratio) / (det.transmission * mu))


def intrinsic_efficiency_std_error(
    click_fraction: float, shots: int, mu: float, det: DetectorModel
) -> float:
    """Return the binomial standard error of :func:`intrinsic_efficiency_from_clicks`.

    The click-fraction error ``sqrt(p (1 - p) / shots)`` is propagated through
    the logarithm to first order.
    """
    if shots <= 0:
        raise ValueError(f"Shots must be positive, got {shots}.")
    if click_fraction >= 1.0:
        return float("inf")
    click_error = np.sqrt(click_fraction * (1.0 - click_fraction) / shots)
    return float(click_error / ((1.0 - click_fraction) * det.transmission * mu))
