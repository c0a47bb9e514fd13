"""Module for state tomography of retrieved qubits."""
