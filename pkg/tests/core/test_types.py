"""Test cases for core value types"""

import math

import pytest

from src.core.types import (
    Family,
    Front,
    GlimmSample,
    InteractionEvent,
    InteractionKind,
    State,
    StepFunction,
    WaveKind,
)


@pytest.fixture
def step():
    """Two jumps: 0 -> 1 at x=-1 and 1 -> 0.5 at x=2 in the u component"""
    return StepFunction(
        (-1.0, 2.0),
        (State(0.0, 0.0, 0.0), State(1.0, 0.0, 0.0), State(0.5, 0.0, 0.0)),
    )


@pytest.fixture
def front():
    return Front(
        id=5,
        family=Family.THREE,
        kind=WaveKind.SHOCK,
        birth_t=2.0,
        birth_x=1.0,
        speed=4.0,
        left_state=State(0.1, 0.0, 0.0),
        right_state=State(0.2, 0.0, -0.2),
        strength=0.1,
        parameter=0.1,
        generation=2,
        parents=(1, 3),
    )


class TestFamily:
    """Test cases for Family"""

    def test_labels(self):
        """Test that labels read 1, 2, 3 and NP"""
        assert [f.label for f in Family] == ["1", "2", "3", "NP"]

    def test_from_label(self):
        """Test parsing labels back, case-insensitive for NP"""
        assert Family.from_label("np") is Family.NONPHYSICAL
        assert Family.from_label(2) is Family.TWO

    def test_nonphysical_sorts_last(self):
        """Test that non-physical fronts count as the fastest family"""
        assert max(Family) is Family.NONPHYSICAL


class TestStepFunction:
    """Test cases for StepFunction"""

    def test_value_count_checked(self):
        """Test that values must outnumber breakpoints by one"""
        with pytest.raises(ValueError, match="needs 2 values"):
            StepFunction((0.0,), (State(0.0, 0.0, 0.0),))

    def test_breakpoints_must_increase(self):
        """Test that unsorted breakpoints are rejected"""
        zero = State(0.0, 0.0, 0.0)
        with pytest.raises(ValueError, match="strictly increasing"):
            StepFunction((1.0, 1.0), (zero, zero, zero))

    def test_value_at_is_right_continuous(self, step):
        """Test evaluation at and between breakpoints"""
        assert step.value_at(-2.0).u == 0.0
        assert step.value_at(-1.0).u == 1.0
        assert step.value_at(1.999).u == 1.0
        assert step.value_at(2.0).u == 0.5

    def test_total_variation(self, step):
        """Test TV as the sum of jump sizes"""
        assert step.total_variation() == pytest.approx(1.5)

    def test_from_pieces_drops_empty_jumps(self):
        """Test that breakpoints without a jump disappear"""
        a, b = State(0.0, 0.0, 0.0), State(1.0, 0.0, 0.0)
        merged = StepFunction.from_pieces([0.0, 1.0, 2.0], [a, a, b, b])
        assert merged.breakpoints == (1.0,)
        assert merged.values == (a, b)

    def test_rows_lead_with_left_tail(self, step):
        """Test the datum.csv layout and reading it back"""
        rows = step.to_rows()
        assert rows[0]["x"] == -math.inf
        assert rows[0]["u"] == 0.0
        assert [row["x"] for row in rows[1:]] == [-1.0, 2.0]
        assert StepFunction.from_rows(rows) == step


class TestFront:
    """Test cases for Front"""

    def test_position_and_lifetime(self, front):
        """Test straight-line motion and the half-open lifetime"""
        assert front.position(3.0) == pytest.approx(5.0)
        assert not front.alive_at(1.0)
        assert front.alive_at(2.0)
        dead = Front.from_dict({**front.to_dict(), "death_t": 4.0})
        assert dead.alive_at(3.999)
        assert not dead.alive_at(4.0)

    def test_dict_round_trip(self, front):
        """Test that to_dict/from_dict keeps every field"""
        assert Front.from_dict(front.to_dict()) == front

    def test_row_lineage(self, front):
        """Test the fronts.csv row"""
        row = front.row()
        assert row["family"] == "3"
        assert row["death_t"] == ""
        assert row["lineage"] == "g2<-1 3"


class TestInteractionEvent:
    """Test cases for InteractionEvent"""

    def test_row_and_dict(self):
        """Test the events.csv row and the lossless dict"""
        event = InteractionEvent(
            index=3,
            t=1.0,
            x=0.5,
            incoming=(1, 2),
            outgoing=(4, 5, 6),
            kind=InteractionKind.CROSSING,
            solver="accurate",
            glimm=GlimmSample(0.2, 0.01, 10.0),
        )
        row = event.row()
        assert row["in_ids"] == "1 2"
        assert row["out_ids"] == "4 5 6"
        assert row["F"] == pytest.approx(0.3)
        assert InteractionEvent.from_dict(event.to_dict()) == event
