"""Addresses of the 15 x 14 memory cells and of the 105 dual-rail qubit slots."""

import logging
from typing import Iterator, List

from pydantic import BaseModel, ConfigDict, Field, model_validator

_logger = logging.getLogger(__name__)

GRID_ROWS = 15
GRID_COLS = 14
SLOTS_PER_ROW = GRID_COLS // 2
SLOT_COUNT = GRID_ROWS * SLOTS_PER_ROW


class GridAddressError(ValueError):
    """Raised for addresses or frequencies that fall outside the cell array."""


class CellAddress(BaseModel):
    """One micro-ensemble of the array."""

    model_config = ConfigDict(frozen=True)

    row: int = Field(ge=0, lt=GRID_ROWS)
    col: int = Field(ge=0, lt=GRID_COLS)

    def __str__(self) -> str:
        """Return ``row,col``."""
        return f"{self.row},{self.col}"


class QubitSlot(BaseModel):
    """Pair of neighbouring cells holding the U and D rails of one qubit.

    The U rail sits in an even column ``2k`` and the D rail in column ``2k+1``
    of the same row.
    """

    model_config = ConfigDict(frozen=True)

    u_cell: CellAddress
    d_cell: CellAddress

    @model_validator(mode="after")
    def _check_pairing(self) -> "QubitSlot":
        if (
            self.u_cell.row != self.d_cell.row
            or self.u_cell.col % 2 != 0
            or self.d_cell.col != self.u_cell.col + 1
        ):
            raise ValueError(
                f"Cells {self.u_cell} and {self.d_cell} do not form a qubit slot."
            )
        return self

    @classmethod
    def at(cls, row: int, col: int) -> "QubitSlot":
        """Return the slot whose U rail is the cell ``(row, col)``."""
        return cls(
            u_cell=CellAddress(row=row, col=col),
            d_cell=CellAddress(row=row, col=col + 1),
        )

    @property
    def row(self) -> int:
        """Return the grid row of the slot."""
        return self.u_cell.row

    @property
    def pair(self) -> int:
        """Return the position ``k`` of the slot within its row."""
        return self.u_cell.col // 2

    @property
    def index(self) -> int:
        """Return the row-major slot number in ``0..104``."""
        return self.row * SLOTS_PER_ROW + self.pair

    def __str__(self) -> str:
        """Return the U-cell address."""
        return str(self.u_cell)


def iter_slots() -> Iterator[QubitSlot]:
    """Enumerate the 105 slots row by row."""
    for row in range(GRID_ROWS):
        for pair in range(SLOTS_PER_ROW):
            yield QubitSlot.at(row, 2 * pair)


def neighbouring_slots(slot: QubitSlot) -> List[QubitSlot]:
    """Return the slots that share a cell edge with ``slot``."""
    neighbours = []
    for d_row, d_pair in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        row, pair = slot.row + d_row, slot.pair + d_pair
        if 0 <= row < GRID_ROWS and 0 <= pair < SLOTS_PER_ROW:
            neighbours.append(QubitSlot.at(row, 2 * pair))
    return neighbours
