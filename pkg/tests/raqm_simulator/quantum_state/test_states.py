"""Module to test the states.py."""

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from raqm_simulator.quantum_state.states import (
    STATE_LABELS,
    BlochVector,
    DensityMatrix,
    PureQubit,
    UnphysicalStateError,
    bloch_from_density,
    complementary_states,
    density_from_bloch,
    depolarize,
    fidelity,
    state_by_label,
)

unit_interval = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


@st.composite
def bloch_vectors(draw):
    """Draw a vector inside the Bloch ball."""
    rx, ry, rz = draw(unit_interval), draw(unit_interval), draw(unit_interval)
    assume(rx**2 + ry**2 + rz**2 <= 1.0)
    return BlochVector(rx, ry, rz)


class TestPureQubit:
    """Class to collect tests for PureQubit."""

    def test_unnormalized_amplitudes_are_rejected(self):
        """Test that amplitudes off the unit sphere raise."""
        with pytest.raises(UnphysicalStateError):
            PureQubit(1.0, 1.0)

    def test_density_matrix_is_projector(self):
        """Test that the density matrix of a pure state has purity one."""
        state = state_by_label("R")
        assert state.density_matrix().purity() == pytest.approx(1.0)


class TestDensityMatrix:
    """Class to collect tests for DensityMatrix validation."""

    @pytest.mark.parametrize(
        "matrix",
        [
            [[1, 1], [0, 0]],
            [[0.6, 0], [0, 0.6]],
            [[1.5, 0], [0, -0.5]],
            [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
        ],
    )
    def test_unphysical_matrices_are_rejected(self, matrix):
        """Test non-Hermitian, non-unit-trace, non-positive and misshaped inputs."""
        with pytest.raises(UnphysicalStateError):
            DensityMatrix(np.array(matrix, dtype=complex))

    def test_matrix_is_read_only(self):
        """Test that the stored array cannot be modified in place."""
        rho = DensityMatrix.maximally_mixed()
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0

    def test_maximally_mixed_purity(self):
        """Test the purity of I/2."""
        assert DensityMatrix.maximally_mixed().purity() == pytest.approx(0.5)


class TestComplementaryStates:
    """Class to collect tests for the six input states."""

    def test_labels_and_order(self):
        """Test the fixed order U, D, +, -, R, L."""
        assert STATE_LABELS == ("U", "D", "+", "-", "R", "L")

    @pytest.mark.parametrize("first, second", [("U", "D"), ("+", "-"), ("R", "L")])
    def test_basis_partners_are_orthogonal(self, first, second):
        """Test that the two states of each basis are orthogonal."""
        rho = state_by_label(second).density_matrix()
        assert fidelity(state_by_label(first), rho) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize(
        "label, axis",
        [("U", [0, 0, 1]), ("D", [0, 0, -1]), ("+", [1, 0, 0]), ("R", [0, 1, 0])],
    )
    def test_bloch_axes(self, label, axis):
        """Test the Bloch-sphere convention of the six states."""
        bloch = bloch_from_density(state_by_label(label).density_matrix())
        np.testing.assert_allclose(bloch.as_array(), axis, atol=1e-12)

    def test_unknown_label(self):
        """Test the error for a label outside the six states."""
        with pytest.raises(KeyError):
            state_by_label("X")

    def test_states_are_normalized(self):
        """Test every returned state is normalized."""
        for state in complementary_states():
            assert np.linalg.norm(state.ket) == pytest.approx(1.0)


class TestDepolarize:
    """Class to collect tests for the depolarizing channel."""

    @pytest.mark.parametrize("p", [0.0, 0.111, 0.5, 1.0])
    def test_fidelity_of_depolarized_pure_state(self, p):
        """Test that depolarizing a pure state gives fidelity 1 - p/2."""
        state = state_by_label("+")
        rho = depolarize(state.density_matrix(), p)
        assert fidelity(state, rho) == pytest.approx(1.0 - p / 2)

    def test_full_depolarization(self):
        """Test that p = 1 returns the maximally mixed state."""
        assert depolarize(state_by_label("U").density_matrix(), 1.0) == DensityMatrix.maximally_mixed()

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_invalid_probability(self, p):
        """Test the range check of the depolarization probability."""
        with pytest.raises(ValueError):
            depolarize(DensityMatrix.maximally_mixed(), p)


def test_bloch_vector_outside_ball():
    """Test that vectors longer than one are rejected."""
    with pytest.raises(UnphysicalStateError):
        BlochVector(1.0, 0.5, 0.0)


@given(bloch_vectors())
def test_bloch_density_round_trip(bloch):
    """Test that density and Bloch representations convert into each other."""
    recovered = bloch_from_density(density_from_bloch(bloch))
    np.testing.assert_allclose(recovered.as_array(), bloch.as_array(), atol=1e-12)


@given(bloch_vectors(), bloch_vectors(), st.floats(min_value=0.0, max_value=1.0))
def test_fidelity_is_linear_in_rho(first, second, weight):
    """Test fidelity((1-w) rho1 + w rho2) = (1-w) F1 + w F2."""
    psi = state_by_label("L")
    rho1, rho2 = density_from_bloch(first), density_from_bloch(second)
    mixture = DensityMatrix((1 - weight) * rho1.matrix + weight * rho2.matrix)
    expected = (1 - weight) * fidelity(psi, rho1) + weight * fidelity(psi, rho2)
    assert fidelity(psi, mixture) == pytest.approx(expected, abs=1e-12)
