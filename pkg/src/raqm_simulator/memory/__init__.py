"""Module for the multi-cell atomic memory."""
