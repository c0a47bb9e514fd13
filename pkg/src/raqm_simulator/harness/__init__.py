"""Module for the experiment harness reproducing the memory characterization."""
