"""Module for the photon source and detector models."""
