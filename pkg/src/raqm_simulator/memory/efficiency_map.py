"""Per-cell retrieval efficiency and its storage-time dependence."""

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from raqm_simulator.memory.cells import GRID_COLS, GRID_ROWS, CellAddress, QubitSlot

_logger = logging.getLogger(__name__)

REFERENCE_STORAGE_TIME_US = 1.38
CORNER_EXCESS = 9e-4


class LarmorEnvelope(str, Enum):
    """Shape of the retrieval revival caused by Larmor precession."""

    cos2 = "cos2"
    flat = "flat"


class MemoryParams(BaseModel):
    """Storage channel parameters.

    Attributes
    ----------
    tau_us : float
        1/e decay time of the spin-wave, 27.8 us.
    larmor_period_us : float
        Larmor period; retrieval revives at its integer multiples.
    p_dep : float
        Depolarization probability applied to every retrieved qubit.
    dphi : float
        Differential phase drift between the rails in rad/us.
    crosstalk_eps : float
        Depolarizing weight of stray addressing light on neighbouring slots.
    envelope : LarmorEnvelope
        ``cos2`` for ``cos^2(pi t / T_L)``, ``flat`` to switch the revival off.

    """

    model_config = ConfigDict(frozen=True)

    tau_us: float = Field(default=27.8, gt=0)
    larmor_period_us: float = Field(default=1.38, gt=0)
    p_dep: float = Field(default=0.0, ge=0, le=1)
    dphi: float = 0.0
    crosstalk_eps: float = Field(default=0.0, ge=0, le=1)
    envelope: LarmorEnvelope = LarmorEnvelope.cos2


@dataclass(frozen=True, eq=False)
class EfficiencyMap:
    """Retrieval efficiency of every cell measured at storage time ``t_ref_us``."""

    eta: np.ndarray
    t_ref_us: float = REFERENCE_STORAGE_TIME_US

    def __post_init__(self):
        """Validate shape and range."""
        eta = np.array(self.eta, dtype=float)
        if eta.shape != (GRID_ROWS, GRID_COLS):
            raise ValueError(
                f"Efficiency map must be {GRID_ROWS}x{GRID_COLS}, got {eta.shape}."
            )
        if np.any(eta < 0) or np.any(eta > 1):
            _logger.error("Efficiency map has entries outside [0, 1].")
            raise ValueError("Efficiency map entries must lie in [0, 1].")
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)

    def __getitem__(self, cell: CellAddress) -> float:
        """Return the efficiency of ``cell`` at the reference time."""
        return float(self.eta[cell.row, cell.col])

    @classmethod
    def uniform(cls, value: float) -> "EfficiencyMap":
        """Return a map with the same efficiency in every cell."""
        return cls(np.full((GRID_ROWS, GRID_COLS), value, dtype=float))


def default_efficiency_map(eta_center: float, eta_edge: float) -> EfficiencyMap:
    """Return the radially decreasing efficiency profile of the atomic cloud.

    ``eta = eta_edge + (eta_center - eta_edge) exp(-r^2 / (2 sigma^2))`` with
    ``r`` the distance from the array centre normalized to the corner distance;
    ``sigma`` puts the corners within 1e-3 of ``eta_edge``.
    """
    if not 0 < eta_edge <= eta_center <= 1:
        _logger.error(f"Invalid efficiency ordering edge={eta_edge}, center={eta_center}.")
        raise ValueError(
            f"Require 0 < eta_edge <= eta_center <= 1, got {eta_edge}, {eta_center}."
        )
    if eta_center == eta_edge:
        return EfficiencyMap.uniform(eta_center)
    rows, cols = np.meshgrid(np.arange(GRID_ROWS), np.arange(GRID_COLS), indexing="ij")
    center_row, center_col = (GRID_ROWS - 1) / 2, (GRID_COLS - 1) / 2
    r_squared = ((rows - center_row) ** 2 + (cols - center_col) ** 2) / (
        center_row**2 + center_col**2
    )
    spread = eta_center - eta_edge
    two_sigma_squared = 1.0 / np.log(spread / min(CORNER_EXCESS, spread / 2))
    return EfficiencyMap(eta_edge + spread * np.exp(-r_squared / two_sigma_squared))


def larmor_envelope(t_us: float, params: MemoryParams) -> float:
    """Return the Larmor revival factor, 1 at integer multiples of the period."""
    if params.envelope == LarmorEnvelope.flat:
        return 1.0
    return float(np.cos(np.pi * t_us / params.larmor_period_us) ** 2)


def retrieval_efficiency(
    efficiency_map: EfficiencyMap, cell: CellAddress, t: float, params: MemoryParams
) -> float:
    """Return the retrieval efficiency of ``cell`` after a storage time ``t`` (us)."""
    if t < 0:
        raise ValueError(f"Storage time must be non-negative, got {t}.")
    eta = (
        efficiency_map[cell]
        * np.exp(-(t - efficiency_map.t_ref_us) / params.tau_us)
        * larmor_envelope(t, params)
    )
    return float(np.clip(eta, 0.0, 1.0))


def slot_efficiency(
    efficiency_map: EfficiencyMap, slot: QubitSlot, t: float, params: MemoryParams
) -> float:
    """Return the mean retrieval efficiency of the two rails of ``slot``."""
    return 0.5 * (
        retrieval_efficiency(efficiency_map, slot.u_cell, t, params)
        + retrieval_efficiency(efficiency_map, slot.d_cell, t, params)
    )


def _header_line(metadata: Dict[str, object]) -> str:
    return "# " + " ".join(f"{key}={value}" for key, value in metadata.items()) + "\n"


def save_efficiency_map(
    efficiency_map: EfficiencyMap,
    path: Path,
    metadata: Optional[Dict[str, object]] = None,
    float_format: str = "%.17g",
) -> None:
    """Write the map as a 15 x 14 CSV after a one-line ``# t_ref_us=...`` header."""
    header = {"t_ref_us": efficiency_map.t_ref_us, **(metadata or {})}
    with open(path, "w", newline="") as f:
        f.write(_header_line(header))
        pd.DataFrame(efficiency_map.eta).to_csv(
            f, header=False, index=False, float_format=float_format, lineterminator="\n"
        )


def load_efficiency_map(path: Path) -> EfficiencyMap:
    """Read a map written by :func:`save_efficiency_map`."""
    with open(path) as f:
        header = f.readline()
    if not header.startswith("#"):
        raise ValueError(f"{path} lacks the '# t_ref_us=...' header line.")
    fields = dict(token.split("=", 1) for token in header[1:].split() if "=" in token)
    if "t_ref_us" not in fields:
        raise ValueError(f"{path} header does not record t_ref_us.")
    eta = pd.read_csv(path, skiprows=1, header=None).to_numpy(dtype=float)
    _logger.debug(f"Loaded efficiency map from {path}.")
    return EfficiencyMap(eta, t_ref_us=float(fields["t_ref_us"]))
