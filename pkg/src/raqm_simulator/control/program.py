"""Write/read pulse programs and their line-oriented text format.

One event per line::

    write <qubit_id> <row_u>,<col_u> <time_us> [state]
    read  <qubit_id> <row_u>,<col_u> <time_us>

``state`` is one of ``U D + - R L`` (R and L are sigma+ and sigma-) and
defaults to ``U``. Everything after ``#`` is a comment.
"""

import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.quantum_state.states import STATE_LABELS, PureQubit, state_by_label

_logger = logging.getLogger(__name__)

DEFAULT_PULSE_DURATION_US = 0.1
TIME_RESOLUTION_DIGITS = 3


class ProgramSyntaxError(ValueError):
    """Raised for lines of a program file that cannot be parsed."""


class EventKind(str, Enum):
    """Kind of memory access."""

    write = "write"
    read = "read"


class ProgramEvent(BaseModel):
    """One write or read request on a qubit slot."""

    model_config = ConfigDict(frozen=True)

    kind: EventKind
    slot: QubitSlot
    qubit_id: str
    time_us: float = Field(ge=0, allow_inf_nan=False)
    duration_us: float = Field(default=DEFAULT_PULSE_DURATION_US, gt=0, allow_inf_nan=False)
    state_label: Optional[str] = None

    @field_validator("state_label")
    @classmethod
    def _check_state_label(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in STATE_LABELS:
            raise ValueError(f"Unknown state {value!r}, expected one of {STATE_LABELS}.")
        return value

    @property
    def state(self) -> PureQubit:
        """Return the state written by this event (``|U>`` unless given)."""
        return state_by_label(self.state_label or "U")


class PulseProgram(BaseModel):
    """Ordered list of memory accesses."""

    events: List[ProgramEvent] = []

    @property
    def writes(self) -> List[ProgramEvent]:
        """Return the write events in program order."""
        return [event for event in self.events if event.kind == EventKind.write]

    @property
    def reads(self) -> List[ProgramEvent]:
        """Return the read events in program order."""
        return [event for event in self.events if event.kind == EventKind.read]


def snap_time(time_us: float) -> float:
    """Round a time to the 1 ns timing grid."""
    return round(float(time_us), TIME_RESOLUTION_DIGITS)


def _parse_line(line: str, number: int) -> ProgramEvent:
    tokens = line.split()
    if len(tokens) not in (4, 5):
        raise ProgramSyntaxError(
            f"Line {number}: expected 'write|read <qubit_id> <row>,<col> <time_us> [state]'."
        )
    kind, qubit_id, address, time = tokens[:4]
    try:
        row, col = (int(part) for part in address.split(","))
        return ProgramEvent(
            kind=EventKind(kind.lower()),
            slot=QubitSlot.at(row, col),
            qubit_id=qubit_id,
            time_us=float(time),
            state_label=tokens[4] if len(tokens) == 5 else None,
        )
    except ValueError as e:
        raise ProgramSyntaxError(f"Line {number}: {e}") from None


def parse_program(text: str) -> PulseProgram:
    """Parse the text format into a :class:`PulseProgram`."""
    events = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            events.append(_parse_line(line, number))
    _logger.debug(f"Parsed {len(events)} program events.")
    return PulseProgram(events=events)


def load_program(path: Path) -> PulseProgram:
    """Read a program file."""
    return parse_program(Path(path).read_text())


def random_access_schedule(
    qubits: Sequence[Tuple[QubitSlot, PureQubit]],
    read_order: Sequence[Union[int, str]],
    spacing: int = 1,
    larmor_period_us: float = 1.38,
    duration_us: float = DEFAULT_PULSE_DURATION_US,
) -> PulseProgram:
    """Build a program writing ``qubits`` in listing order and reading them in ``read_order``.

    Qubits are labelled ``1..n``. Consecutive accesses are ``spacing`` Larmor
    periods apart, so every storage time is an integer number of periods.
    """
    slots = [slot for slot, _ in qubits]
    if len(set(slots)) != len(slots):
        _logger.error(f"Duplicate slots in {slots}.")
        raise ValueError("Random-access qubits must occupy distinct slots.")
    if spacing < 1:
        raise ValueError(f"Spacing must be at least one Larmor period, got {spacing}.")
    labels = [str(i + 1) for i in range(len(qubits))]
    order = [str(label) for label in read_order]
    if sorted(order) != sorted(labels):
        _logger.error(f"Read order {order} is not a permutation of {labels}.")
        raise ValueError(f"Read order {order} is not a permutation of {labels}.")

    step = spacing * larmor_period_us
    times = iter(np.arange(2 * len(qubits)) * step)
    events = [
        ProgramEvent(
            kind=EventKind.write,
            slot=slot,
            qubit_id=label,
            time_us=snap_time(next(times)),
            duration_us=duration_us,
            state_label=state.label,
        )
        for label, (slot, state) in zip(labels, qubits)
    ]
    by_label = dict(zip(labels, slots))
    events += [
        ProgramEvent(
            kind=EventKind.read,
            slot=by_label[label],
            qubit_id=label,
            time_us=snap_time(next(times)),
            duration_us=duration_us,
        )
        for label in order
    ]
    return PulseProgram(events=events)
