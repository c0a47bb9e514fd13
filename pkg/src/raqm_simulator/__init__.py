"""Simulator of a random-access quantum memory for dual-rail photonic qubits."""

from importlib.metadata import PackageNotFoundError, version

try:
    dist_name = "raqm-simulator"
    __version__ = version(dist_name)
except PackageNotFoundError:  # pragma: no cover
    __version__ = "unknown"
finally:
    del version, PackageNotFoundError
