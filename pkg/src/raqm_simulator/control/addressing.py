"""RF addressing of the cell array through crossed AODs.

Rows are steered by the X-direction AODs and columns by the Y-direction AODs;
both scan from 98.8 MHz in steps of 0.6 MHz.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from raqm_simulator.memory.cells import (
    GRID_COLS,
    GRID_ROWS,
    CellAddress,
    GridAddressError,
    QubitSlot,
)

_logger = logging.getLogger(__name__)

BASE_FREQUENCY_MHZ = 98.8
FREQUENCY_STEP_MHZ = 0.6
FREQUENCY_DIGITS = 6
WEIGHT_TOLERANCE = 1e-9


def _grid_frequency(index: int) -> float:
    return round(BASE_FREQUENCY_MHZ + FREQUENCY_STEP_MHZ * index, FREQUENCY_DIGITS)


def _frequency_index(frequency: float, size: int, axis: str) -> int:
    position = (frequency - BASE_FREQUENCY_MHZ) / FREQUENCY_STEP_MHZ
    index = int(round(position))
    if abs(position - index) > 1e-6 or not 0 <= index < size:
        _logger.error(f"{axis} frequency {frequency} MHz is off the addressing grid.")
        raise GridAddressError(f"{axis} frequency {frequency} MHz addresses no cell.")
    return index


def address_to_frequencies(cell: CellAddress) -> Tuple[float, float]:
    """Return the X and Y drive frequencies (MHz) pointing the beams at ``cell``."""
    return _grid_frequency(cell.row), _grid_frequency(cell.col)


def frequencies_to_address(fx: float, fy: float) -> CellAddress:
    """Return the cell addressed by the drive frequencies ``(fx, fy)`` in MHz."""
    return CellAddress(
        row=_frequency_index(fx, GRID_ROWS, "X"),
        col=_frequency_index(fy, GRID_COLS, "Y"),
    )


class ToneComponent(BaseModel):
    """One frequency pair of a superposed RF drive and its complex amplitude."""

    model_config = ConfigDict(frozen=True)

    fx_mhz: float
    fy_mhz: float
    re: float
    im: float

    @property
    def weight(self) -> complex:
        """Return the complex amplitude."""
        return complex(self.re, self.im)


class RFTone(BaseModel):
    """RF drive of one AOD pair.

    ``fx_mhz``/``fy_mhz`` give the leading frequency pair; superposition drives
    list every component in ``amplitude_weights``.
    """

    model_config = ConfigDict(frozen=True)

    fx_mhz: float
    fy_mhz: float
    amplitude_weights: Optional[List[ToneComponent]] = None

    @field_validator("fx_mhz")
    @classmethod
    def _check_fx(cls, value: float) -> float:
        _frequency_index(value, GRID_ROWS, "X")
        return value

    @field_validator("fy_mhz")
    @classmethod
    def _check_fy(cls, value: float) -> float:
        _frequency_index(value, GRID_COLS, "Y")
        return value

    @model_validator(mode="after")
    def _check_components(self) -> "RFTone":
        for component in self.amplitude_weights or []:
            frequencies_to_address(component.fx_mhz, component.fy_mhz)
        return self


def slot_tone(slot: QubitSlot, weights: Tuple[complex, complex]) -> RFTone:
    """Return the drive splitting a beam over the U and D cells of ``slot``.

    Zero-weight rails are dropped, so a basis state gives a single tone.
    """
    w0, w1 = complex(weights[0]), complex(weights[1])
    norm = abs(w0) ** 2 + abs(w1) ** 2
    if abs(norm - 1.0) > WEIGHT_TOLERANCE:
        _logger.error(f"Tone weights {weights} are not normalized.")
        raise ValueError(f"Tone weights must satisfy |w0|^2 + |w1|^2 = 1, got {norm}.")
    components = []
    for cell, weight in ((slot.u_cell, w0), (slot.d_cell, w1)):
        if abs(weight) > WEIGHT_TOLERANCE:
            fx, fy = address_to_frequencies(cell)
            components.append(
                ToneComponent(fx_mhz=fx, fy_mhz=fy, re=weight.real, im=weight.imag)
            )
    lead = components[0]
    if len(components) == 1:
        return RFTone(fx_mhz=lead.fx_mhz, fy_mhz=lead.fy_mhz)
    return RFTone(fx_mhz=lead.fx_mhz, fy_mhz=lead.fy_mhz, amplitude_weights=components)


def relative_phase(tone: RFTone) -> float:
    """Return the phase of the D component relative to the U component in radians."""
    if not tone.amplitude_weights or len(tone.amplitude_weights) < 2:
        return 0.0
    first, second = tone.amplitude_weights[0].weight, tone.amplitude_weights[1].weight
    return float(np.angle(second / first))
