"""Compile pulse programs into RF event schedules for the three AOD groups.

The control AODs fire on every write and read, the write AODs prepare the
input superposition on writes, and the read AODs collect both rails of the
slot on reads. Each group addresses one slot at a time.
"""

import logging
from enum import Enum
from typing import Dict, List

import numpy as np
from pydantic import BaseModel, Field

from raqm_simulator.control.addressing import RFTone, relative_phase, slot_tone
from raqm_simulator.control.program import EventKind, ProgramEvent, PulseProgram, snap_time
from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.memory.efficiency_map import MemoryParams, larmor_envelope

_logger = logging.getLogger(__name__)

TIMING_TOLERANCE_US = 1e-3
BALANCED_WEIGHTS = (1 / np.sqrt(2), 1 / np.sqrt(2))


class ScheduleError(ValueError):
    """Base class for rejected pulse programs."""


class OverlapError(ScheduleError):
    """Two events of one AOD group overlap in time."""


class DoubleWriteError(ScheduleError):
    """A qubit or slot is written again before being read."""


class UnmatchedReadError(ScheduleError):
    """A read has no earlier write of the same qubit on the same slot."""


class UnmatchedWriteError(ScheduleError):
    """A written qubit is never read."""


class LarmorTimingError(ScheduleError):
    """A storage time is not an integer multiple of the Larmor period."""


class TimingMode(str, Enum):
    """Handling of storage times off the Larmor revivals."""

    strict = "strict"
    warn = "warn"


class RFEvent(BaseModel):
    """One RF pulse on an AOD group."""

    start_us: float
    duration_us: float
    tone: RFTone

    @property
    def end_us(self) -> float:
        """Return the end time of the pulse."""
        return self.start_us + self.duration_us

    def to_json_dict(self) -> dict:
        """Return the JSON representation of the event."""
        weights = None
        if self.tone.amplitude_weights:
            weights = [component.model_dump() for component in self.tone.amplitude_weights]
        return {
            "start_us": self.start_us,
            "duration_us": self.duration_us,
            "fx_mhz": self.tone.fx_mhz,
            "fy_mhz": self.tone.fy_mhz,
            "weights": weights,
            "relative_phase_rad": relative_phase(self.tone),
        }


class TimingAnnotation(BaseModel):
    """Efficiency penalty of a storage time off the Larmor revivals."""

    qubit_id: str
    storage_time_us: float
    larmor_envelope: float


class RFEventList(BaseModel):
    """Compiled schedule of the control, write and read AOD groups."""

    control: List[RFEvent] = []
    write: List[RFEvent] = []
    read: List[RFEvent] = []
    storage_times_us: Dict[str, float] = Field(default_factory=dict)
    annotations: List[TimingAnnotation] = []

    def channels(self) -> Dict[str, List[RFEvent]]:
        """Return the three event lists keyed by AOD group."""
        return {"control": self.control, "write": self.write, "read": self.read}

    def to_json_dict(self) -> dict:
        """Return the documented JSON layout."""
        output: dict = {
            name: [event.to_json_dict() for event in events]
            for name, events in self.channels().items()
        }
        output["storage_times_us"] = dict(self.storage_times_us)
        output["annotations"] = [note.model_dump() for note in self.annotations]
        return output


def _check_overlaps(name: str, events: List[RFEvent]) -> None:
    for previous, current in zip(events, events[1:]):
        if current.start_us < previous.end_us - 1e-9:
            _logger.error(
                f"{name} events at {previous.start_us} us and {current.start_us} us overlap."
            )
            raise OverlapError(
                f"{name} AOD events at {previous.start_us} us and "
                f"{current.start_us} us overlap."
            )


def _pair_events(
    events: List[ProgramEvent], params: MemoryParams, mode: TimingMode
) -> RFEventList:
    open_writes: Dict[str, ProgramEvent] = {}
    busy_slots: Dict[QubitSlot, str] = {}
    storage_times: Dict[str, float] = {}
    annotations: List[TimingAnnotation] = []
    for event in events:
        if event.kind == EventKind.write:
            if event.qubit_id in open_writes or event.slot in busy_slots:
                _logger.error(f"Qubit {event.qubit_id} written while slot {event.slot} is busy.")
                raise DoubleWriteError(
                    f"Write of qubit {event.qubit_id} at {event.time_us} us hits an unread qubit."
                )
            open_writes[event.qubit_id] = event
            busy_slots[event.slot] = event.qubit_id
            continue

        write = open_writes.pop(event.qubit_id, None)
        if write is None or write.slot != event.slot:
            _logger.error(f"Read of qubit {event.qubit_id} has no matching write.")
            raise UnmatchedReadError(
                f"Read of qubit {event.qubit_id} at {event.time_us} us has no matching write."
            )
        del busy_slots[write.slot]
        storage_time = snap_time(event.time_us - write.time_us)
        storage_times[event.qubit_id] = storage_time
        periods = round(storage_time / params.larmor_period_us)
        offset = abs(storage_time - periods * params.larmor_period_us)
        if periods >= 1 and offset <= TIMING_TOLERANCE_US:
            continue
        if mode == TimingMode.strict:
            _logger.error(f"Storage time {storage_time} us of qubit {event.qubit_id} is off-Larmor.")
            raise LarmorTimingError(
                f"Storage time {storage_time} us of qubit {event.qubit_id} is not a "
                f"multiple of the Larmor period {params.larmor_period_us} us."
            )
        envelope = larmor_envelope(storage_time, params)
        _logger.warning(
            f"Storage time {storage_time} us of qubit {event.qubit_id} is off the Larmor "
            f"revivals; retrieval efficiency scaled by {envelope:.3g}."
        )
        annotations.append(
            TimingAnnotation(
                qubit_id=event.qubit_id,
                storage_time_us=storage_time,
                larmor_envelope=envelope,
            )
        )
    if open_writes:
        unread = ", ".join(sorted(open_writes))
        _logger.error(f"Qubits {unread} are never read.")
        raise UnmatchedWriteError(f"Qubits {unread} are written but never read.")
    return RFEventList(storage_times_us=storage_times, annotations=annotations)


def compile_program(
    program: PulseProgram, params: MemoryParams, mode: TimingMode = TimingMode.strict
) -> RFEventList:
    """Compile ``program`` into per-AOD-group RF events and validate its timing."""
    events = sorted(
        (event.model_copy(update={"time_us": snap_time(event.time_us)}) for event in program.events),
        key=lambda event: event.time_us,
    )
    control, write, read = [], [], []
    for event in events:
        balanced = slot_tone(event.slot, BALANCED_WEIGHTS)
        control.append(
            RFEvent(start_us=event.time_us, duration_us=event.duration_us, tone=balanced)
        )
        if event.kind == EventKind.write:
            state = event.state
            tone = slot_tone(event.slot, (state.c0, state.c1))
            write.append(RFEvent(start_us=event.time_us, duration_us=event.duration_us, tone=tone))
        else:
            read.append(
                RFEvent(start_us=event.time_us, duration_us=event.duration_us, tone=balanced)
            )
    for name, channel in (("write", write), ("read", read), ("control", control)):
        _check_overlaps(name, channel)

    schedule = _pair_events(events, params, mode)
    schedule = schedule.model_copy(update={"control": control, "write": write, "read": read})
    _logger.info(
        f"Compiled {len(write)} writes and {len(read)} reads with "
        f"{len(schedule.annotations)} timing warnings."
    )
    return schedule
