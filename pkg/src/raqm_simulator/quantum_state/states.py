"""Dual-rail qubit states, fidelity and the depolarizing channel.

Axis convention used throughout the package: the rails ``|U>`` / ``|D>`` sit
on the +z / -z poles of the Bloch sphere, ``|+>`` / ``|->`` on +x / -x and
``|sigma+>`` / ``|sigma->`` = ``(|U> +- i|D>)/sqrt(2)`` on +y / -y.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

_logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
PHYSICAL_TOLERANCE = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


class UnphysicalStateError(ValueError):
    """Raised when a vector or matrix does not describe a physical qubit state."""


@dataclass(frozen=True)
class PureQubit:
    """Pure dual-rail qubit ``c0|U> + c1|D>``."""

    c0: complex
    c1: complex
    label: str = ""

    def __post_init__(self):
        """Check normalization."""
        norm = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm - 1.0) > NORM_TOLERANCE:
            _logger.error(f"Pure qubit amplitudes have norm {norm}.")
            raise UnphysicalStateError(
                f"|c0|^2 + |c1|^2 must be 1, got {norm:.15g}."
            )

    @property
    def ket(self) -> np.ndarray:
        """Return the state as a column vector in the (U, D) basis."""
        return np.array([self.c0, self.c1], dtype=complex)

    def density_matrix(self) -> "DensityMatrix":
        """Return the projector ``|psi><psi|``."""
        ket = self.ket
        return DensityMatrix(np.outer(ket, ket.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Physical 2x2 density operator of a dual-rail qubit."""

    matrix: np.ndarray

    def __post_init__(self):
        """Validate hermiticity, unit trace and positivity."""
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (2, 2):
            raise UnphysicalStateError(
                f"Density matrix must be 2x2, got shape {matrix.shape}."
            )
        if np.max(np.abs(matrix - matrix.conj().T)) > NORM_TOLERANCE:
            _logger.error("Density matrix is not Hermitian.")
            raise UnphysicalStateError("Density matrix is not Hermitian.")
        trace = np.trace(matrix).real
        if abs(trace - 1.0) > NORM_TOLERANCE:
            _logger.error(f"Density matrix has trace {trace}.")
            raise UnphysicalStateError(f"Density matrix trace is {trace:.15g}, not 1.")
        eigenvalues = np.linalg.eigvalsh(matrix)
        if eigenvalues.min() < -PHYSICAL_TOLERANCE:
            _logger.error(f"Density matrix has eigenvalues {eigenvalues}.")
            raise UnphysicalStateError(
                f"Density matrix has negative eigenvalue {eigenvalues.min():.3g}."
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def __eq__(self, other) -> bool:
        """Compare matrices up to the numerical tolerance."""
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return bool(np.allclose(self.matrix, other.matrix, atol=NORM_TOLERANCE))

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix":
        """Return ``I/2``."""
        return cls(IDENTITY / 2)

    def purity(self) -> float:
        """Return ``tr(rho^2)``."""
        return float(np.trace(self.matrix @ self.matrix).real)


@dataclass(frozen=True)
class BlochVector:
    """Bloch vector ``(rx, ry, rz)`` of a qubit state."""

    rx: float
    ry: float
    rz: float

    def __post_init__(self):
        """Reject vectors outside the Bloch ball."""
        if self.norm() ** 2 > 1.0 + PHYSICAL_TOLERANCE:
            _logger.error(f"Bloch vector {self.as_array()} lies outside the ball.")
            raise UnphysicalStateError(
                f"Bloch vector norm {self.norm():.15g} exceeds 1."
            )

    def as_array(self) -> np.ndarray:
        """Return the vector as a numpy array."""
        return np.array([self.rx, self.ry, self.rz], dtype=float)

    def norm(self) -> float:
        """Return the Euclidean length of the vector."""
        return float(np.linalg.norm([self.rx, self.ry, self.rz]))


def complementary_states() -> List[PureQubit]:
    """Return the six complementary input states.

    The order is fixed: ``|U>, |D>, |+>, |->, |sigma+>, |sigma->``, i.e. the
    +/- eigenstates of the Z, X and Y bases in turn.
    """
    s = 1 / np.sqrt(2)
    return [
        PureQubit(1.0 + 0j, 0j, label="U"),
        PureQubit(0j, 1.0 + 0j, label="D"),
        PureQubit(s + 0j, s + 0j, label="+"),
        PureQubit(s + 0j, -s + 0j, label="-"),
        PureQubit(s + 0j, 1j * s, label="R"),
        PureQubit(s + 0j, -1j * s, label="L"),
    ]


STATE_LABELS = tuple(state.label for state in complementary_states())


def state_by_label(label: str) -> PureQubit:
    """Look up one of the six complementary states by its label."""
    for state in complementary_states():
        if state.label == label:
            return state
    raise KeyError(f"Unknown state label {label!r}, expected one of {STATE_LABELS}.")


def fidelity(psi: PureQubit, rho: DensityMatrix) -> float:
    """Return the overlap ``<psi|rho|psi>``."""
    ket = psi.ket
    overlap = ket.conj() @ rho.matrix @ ket
    return float(np.clip(overlap.real, 0.0, 1.0))


def depolarize(rho: DensityMatrix, p: float) -> DensityMatrix:
    """Apply the depolarizing channel ``(1-p) rho + p I/2``."""
    if not 0.0 <= p <= 1.0:
        _logger.error(f"Depolarization probability {p} outside [0, 1].")
        raise ValueError(f"Depolarization probability must lie in [0, 1], got {p}.")
    return DensityMatrix((1.0 - p) * rho.matrix + p * IDENTITY / 2)


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    """Return the Bloch vector ``r_k = tr(rho sigma_k)``."""
    m = rho.matrix
    return BlochVector(
        rx=float(np.trace(m @ PAULI_X).real),
        ry=float(np.trace(m @ PAULI_Y).real),
        rz=float(np.trace(m @ PAULI_Z).real),
    )


def density_from_bloch(bloch: BlochVector) -> DensityMatrix:
    """Return ``(I + r . sigma)/2``."""
    return DensityMatrix(
        (IDENTITY + bloch.rx * PAULI_X + bloch.ry * PAULI_Y + bloch.rz * PAULI_Z) / 2
    )
