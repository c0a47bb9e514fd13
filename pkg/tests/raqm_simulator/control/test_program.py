"""Module to test the program.py."""

import pytest

from raqm_simulator.control.program import (
    EventKind,
    ProgramSyntaxError,
    load_program,
    parse_program,
    random_access_schedule,
    snap_time,
)
from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.quantum_state.states import state_by_label

PROGRAM_TEXT = """
# three qubits, last in first out
write 1 3,2 0.0 +
write 2 7,6 1.38 R
write 3 11,10 2.76
read 3 11,10 4.14
read 2 7,6 5.52   # second
read 1 3,2 6.9
"""

SLOTS = [QubitSlot.at(3, 2), QubitSlot.at(7, 6), QubitSlot.at(11, 10)]


class TestParseProgram:
    """Class to collect tests for the program text format."""

    def test_parse(self):
        """Test events, comments and default state."""
        program = parse_program(PROGRAM_TEXT)
        assert len(program.writes) == 3
        assert len(program.reads) == 3
        first = program.events[0]
        assert first.kind == EventKind.write
        assert first.slot == QubitSlot.at(3, 2)
        assert first.state.label == "+"
        assert program.writes[2].state.label == "U"
        assert [event.qubit_id for event in program.reads] == ["3", "2", "1"]

    def test_load(self, tmp_path):
        """Test reading a program file."""
        path = tmp_path / "program.txt"
        path.write_text(PROGRAM_TEXT)
        assert load_program(path) == parse_program(PROGRAM_TEXT)

    @pytest.mark.parametrize(
        "line",
        [
            "write 1 3,2",
            "store 1 3,2 0.0",
            "write 1 3,3 0.0",
            "write 1 3;2 0.0",
            "write 1 3,2 soon",
            "write 1 3,2 0.0 X",
            "write 1 3,2 -1.0",
            "read 1 0,0 inf",
            "write 1 0,0 nan",
        ],
    )
    def test_syntax_errors(self, line):
        """Test that malformed lines are reported as syntax errors."""
        with pytest.raises(ProgramSyntaxError, match="Line 1"):
            parse_program(line)


class TestRandomAccessSchedule:
    """Class to collect tests for random_access_schedule."""

    @pytest.mark.parametrize(
        "order, storage_times",
        [
            (["3", "2", "1"], {"1": 6.9, "2": 4.14, "3": 1.38}),
            (["1", "2", "3"], {"1": 4.14, "2": 4.14, "3": 4.14}),
            (["2", "1", "3"], {"1": 5.52, "2": 2.76, "3": 4.14}),
        ],
    )
    def test_storage_times(self, order, storage_times):
        """Test the timing of the three-qubit schedule."""
        state = state_by_label("U")
        program = random_access_schedule([(slot, state) for slot in SLOTS], order)
        writes = {event.qubit_id: event.time_us for event in program.writes}
        reads = {event.qubit_id: event.time_us for event in program.reads}
        assert writes == {"1": 0.0, "2": 1.38, "3": 2.76}
        assert [event.qubit_id for event in program.reads] == order
        assert {key: snap_time(reads[key] - writes[key]) for key in reads} == storage_times

    def test_spacing(self):
        """Test that the spacing multiplies the access interval."""
        state = state_by_label("U")
        program = random_access_schedule([(SLOTS[0], state)], [1], spacing=2)
        assert program.reads[0].time_us == 2.76

    @pytest.mark.parametrize(
        "slots, order, spacing",
        [
            ([SLOTS[0], SLOTS[0]], ["1", "2"], 1),
            (SLOTS, ["1", "2"], 1),
            (SLOTS, ["1", "2", "4"], 1),
            (SLOTS, ["1", "2", "3"], 0),
        ],
    )
    def test_invalid(self, slots, order, spacing):
        """Test duplicate slots, bad permutations and spacing."""
        state = state_by_label("U")
        with pytest.raises(ValueError):
            random_access_schedule([(slot, state) for slot in slots], order, spacing=spacing)


def test_snap_time():
    """Test rounding to the nanosecond grid."""
    assert snap_time(3 * 1.38) == 4.14
    assert snap_time(0.00049) == 0.0
