"""Module to test the detector.py."""

import numpy as np
import pytest
from pydantic import ValidationError

from raqm_simulator.photonics.detector import (
    DetectorModel,
    click_probability,
    intrinsic_efficiency_from_clicks,
    intrinsic_efficiency_std_error,
    sample_clicks,
)


class TestDetectorModel:
    """Class to collect tests for DetectorModel."""

    def test_default_transmission(self):
        """Test that the default path transmits the fibre coupling only."""
        assert DetectorModel().transmission == pytest.approx(0.65)

    @pytest.mark.parametrize(
        "field, value",
        [("quantum_efficiency", 1.2), ("dark_click_prob", 1.0), ("coupling_efficiency", -0.1)],
    )
    def test_invalid_values(self, field, value):
        """Test the probability ranges."""
        with pytest.raises(ValidationError):
            DetectorModel(**{field: value})


class TestClickProbability:
    """Class to collect tests for click_probability and its inverse."""

    def test_no_light_only_dark_counts(self):
        """Test that an empty gate clicks with the dark-count probability."""
        assert click_probability(0.0, DetectorModel(dark_click_prob=0.01)) == pytest.approx(0.01)

    def test_value(self):
        """Test the Poissonian click formula."""
        expected = 1 - np.exp(-0.65 * 0.5 * 0.18)
        assert click_probability(0.5 * 0.18, DetectorModel()) == pytest.approx(expected)

    @pytest.mark.parametrize(
        "field, values",
        [
            ("quantum_efficiency", [0.0, 0.3, 0.6, 1.0]),
            ("coupling_efficiency", [0.0, 0.3, 0.65, 1.0]),
            ("dark_click_prob", [0.0, 1e-4, 1e-2, 0.5]),
        ],
    )
    def test_monotone_in_detector_fields(self, field, values):
        """Test that a better detector path or more background never lowers the click rate."""
        probabilities = [click_probability(0.09, DetectorModel(**{field: value})) for value in values]
        assert np.all(np.diff(probabilities) >= 0)

    def test_monotone_in_mean_photons(self):
        """Test that brighter arrivals never lower the click rate."""
        det = DetectorModel(dark_click_prob=1e-3)
        probabilities = [click_probability(m, det) for m in np.linspace(0.0, 20.0, 201)]
        assert np.all(np.diff(probabilities) >= 0)
        assert probabilities[-1] < 1.0

    def test_union_bound(self):
        """Test P(click) <= m for an ideal detector, with equality as m -> 0."""
        det = DetectorModel(coupling_efficiency=1.0)
        for m in np.linspace(0.0, 3.0, 31):
            assert click_probability(m, det) <= m + 1e-15
        assert click_probability(1e-6, det) == pytest.approx(1e-6, rel=1e-5)

    def test_negative_mean(self):
        """Test that negative photon numbers are rejected."""
        with pytest.raises(ValueError):
            click_probability(-0.1, DetectorModel())

    @pytest.mark.parametrize("eta", [0.0, 0.02, 0.18, 0.5, 1.0])
    @pytest.mark.parametrize("dark", [0.0, 1e-3])
    def test_inversion(self, eta, dark):
        """Test that the efficiency is recovered from the exact click probability."""
        det = DetectorModel(dark_click_prob=dark)
        fraction = click_probability(0.5 * eta, det)
        assert intrinsic_efficiency_from_clicks(fraction, 0.5, det) == pytest.approx(
            eta, abs=1e-12
        )

    def test_fewer_clicks_than_dark_counts(self):
        """Test that a click fraction below the dark-count level maps to zero efficiency."""
        assert intrinsic_efficiency_from_clicks(0.0, 0.5, DetectorModel(dark_click_prob=0.01)) == 0.0

    def test_zero_transmission(self):
        """Test that nothing can be inferred through a blocked path."""
        with pytest.raises(ValueError):
            intrinsic_efficiency_from_clicks(0.1, 0.5, DetectorModel(coupling_efficiency=0.0))


class TestSampleClicks:
    """Class to collect tests for sample_clicks."""

    def test_click_rate(self, rng):
        """Test the sampled click rate against the analytic probability."""
        det = DetectorModel()
        photons = rng.poisson(0.5, size=200_000)
        clicks = sample_clicks(photons, 0.18, det, rng)
        assert clicks.dtype == bool
        assert clicks.mean() == pytest.approx(click_probability(0.5 * 0.18, det), abs=0.002)

    def test_no_photons_no_clicks(self, rng):
        """Test that without dark counts empty gates never click."""
        clicks = sample_clicks(np.zeros(1000, dtype=int), 1.0, DetectorModel(), rng)
        assert not clicks.any()


class TestStdError:
    """Class to collect tests for intrinsic_efficiency_std_error."""

    def test_scales_with_shots(self):
        """Test the 1/sqrt(shots) scaling."""
        det = DetectorModel()
        small = intrinsic_efficiency_std_error(0.05, 10_000, 0.5, det)
        large = intrinsic_efficiency_std_error(0.05, 40_000, 0.5, det)
        assert small / large == pytest.approx(2.0)

    def test_saturated(self):
        """Test that a detector clicking on every gate gives an infinite error."""
        assert intrinsic_efficiency_std_error(1.0, 100, 0.5, DetectorModel()) == float("inf")

    def test_no_shots(self):
        """Test that at least one shot is needed."""
        with pytest.raises(ValueError):
            intrinsic_efficiency_std_error(0.5, 0, 0.5, DetectorModel())
