"""Module for the registered harness experiments."""
