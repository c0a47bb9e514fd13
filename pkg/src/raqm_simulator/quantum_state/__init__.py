"""Module for dual-rail qubit states."""
