"""Module for classical fidelity bounds."""
