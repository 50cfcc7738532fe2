"""Test cases for event logger"""

import json
from datetime import datetime
from pathlib import Path
from unittest.mock import patch

import pytest

from src.core.types import GlimmSample, InteractionEvent, InteractionKind
from src.logger.event_logger import EventLogger


def make_event(index: int, kind: InteractionKind = InteractionKind.CROSSING) -> InteractionEvent:
    return InteractionEvent(
        index=index,
        t=0.5 * index,
        x=float(index),
        incoming=(2 * index, 2 * index + 1),
        outgoing=(100 + index,),
        kind=kind,
        solver="accurate",
        glimm=GlimmSample(0.1, 0.002, 100.0),
    )


@pytest.fixture
def event_logger(temp_log_dir):
    """Create EventLogger instance with temp directory"""
    with patch("src.logger.event_logger.is_test_environment", return_value=False):
        logger = EventLogger(log_file=temp_log_dir / "test.jsonl")
        yield logger


@pytest.fixture
def sample_event():
    """Create a sample interaction event"""
    return make_event(1)


class TestEventLogger:
    """Test cases for EventLogger"""

    def test_logger_disabled(self, sample_event, monkeypatch, temp_log_dir):
        """Test that disabled logger doesn't write files"""
        monkeypatch.setenv("SHOCKTRACK_EVENT_LOGGING_ENABLED", "false")
        logger = EventLogger(log_file=temp_log_dir / "test.jsonl")
        logger.handle_event(sample_event)

        assert list(temp_log_dir.glob("*.jsonl")) == []

    def test_silent_in_test_environment(self, sample_event, temp_log_dir):
        """Test that nothing is written while SHOCKTRACK_TEST_ENVIRONMENT is set"""
        logger = EventLogger(log_file=temp_log_dir / "test.jsonl")
        logger.handle_event(sample_event)

        assert list(temp_log_dir.glob("*.jsonl")) == []

    def test_log_event_creation(self, event_logger, sample_event, temp_log_dir):
        """Test that events are logged to file"""
        event_logger.handle_event(sample_event)

        log_files = list(temp_log_dir.glob("*.jsonl"))
        assert len(log_files) == 1

        with open(log_files[0]) as f:
            log_entry = json.loads(f.readline())

        assert log_entry["event"]["index"] == 1
        assert log_entry["event"]["kind"] == "crossing"
        assert log_entry["event"]["incoming"] == [2, 3]
        assert "time" in log_entry

    def test_multiple_events_same_file(self, event_logger, temp_log_dir):
        """Test multiple events are appended to same file"""
        for i in range(5):
            event_logger.handle_event(make_event(i))

        log_files = list(temp_log_dir.glob("*.jsonl"))
        assert len(log_files) == 1

        with open(log_files[0]) as f:
            lines = f.readlines()
        assert [json.loads(line)["event"]["index"] for line in lines] == list(range(5))

    def test_log_rotation(self, event_logger, sample_event):
        """Test log rotation when file gets too large"""
        event_logger.config.max_log_size = 1000
        log_file = event_logger.log_file
        with open(log_file, "w") as f:
            for _ in range(100):
                f.write(json.dumps({"test": "data" * 50}) + "\n")

        event_logger.handle_event(sample_event)

        assert not log_file.exists()
        assert (log_file.parent / "test.1").exists()

    def test_handle_event_with_error(self, event_logger, sample_event, monkeypatch):
        """Test that logging errors don't crash the handler"""
        monkeypatch.setattr(event_logger, "log_file", Path("/invalid/path/test.jsonl"))

        event_logger.handle_event(sample_event)

    def test_timestamp_format(self, event_logger, sample_event, temp_log_dir):
        """Test that timestamps are properly formatted"""
        event_logger.handle_event(sample_event)

        with open(temp_log_dir / "test.jsonl") as f:
            log_entry = json.loads(f.readline())

        parsed_time = datetime.fromisoformat(log_entry["time"].replace("Z", "+00:00"))
        assert isinstance(parsed_time, datetime)

    def test_get_recent_events_filters_kind(self, event_logger):
        """Test reading back the newest entries of one kind"""
        event_logger.handle_event(make_event(0))
        event_logger.handle_event(make_event(1, InteractionKind.CANCELLATION))
        event_logger.handle_event(make_event(2))
        event_logger.handle_event(make_event(3, InteractionKind.CANCELLATION))

        recent = event_logger.get_recent_events(count=10, kind="cancellation")
        assert [entry["event"]["index"] for entry in recent] == [1, 3]
        assert len(event_logger.get_recent_events(count=2)) == 2
