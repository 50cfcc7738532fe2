"""Test cases for event dispatcher"""

import os
from unittest.mock import MagicMock, patch

import pytest

from src.core.dispatcher import EventDispatcher
from src.core.types import GlimmSample, InteractionEvent, InteractionKind


@pytest.fixture
def mock_event():
    """Create a cancellation event"""
    return InteractionEvent(
        index=0,
        t=1.5,
        x=-0.25,
        incoming=(3, 4),
        outgoing=(7,),
        kind=InteractionKind.CANCELLATION,
        solver="accurate",
        glimm=GlimmSample(0.1, 0.001, 100.0),
        details={"family": "3", "erased_strength": 0.01},
    )


class TestEventDispatcher:
    """Test cases for EventDispatcher"""

    @patch.dict(os.environ, {"SHOCKTRACK_CANCELLATION_WATCH_ENABLED": "false"})
    @patch.dict(os.environ, {"SHOCKTRACK_EVENT_LOGGING_ENABLED": "false"})
    def test_all_features_disabled(self):
        """Test dispatcher with all sinks disabled"""
        dispatcher = EventDispatcher()
        assert dispatcher.logger is None
        assert dispatcher.cancellations is None
        assert dispatcher.sinks == []

    @patch("src.logger.event_logger.EventLogger")
    @patch.dict(os.environ, {"SHOCKTRACK_EVENT_LOGGING_ENABLED": "true"})
    def test_logger_enabled(self, mock_logger_class):
        """Test dispatcher with the event logger enabled"""
        mock_logger = MagicMock()
        mock_logger_class.return_value = mock_logger

        dispatcher = EventDispatcher()
        assert dispatcher.logger is mock_logger

    @patch.dict(os.environ, {"SHOCKTRACK_CANCELLATION_WATCH_ENABLED": "true"})
    def test_cancellation_watch_enabled(self):
        """Test dispatcher with the cancellation watch enabled"""
        dispatcher = EventDispatcher()
        assert dispatcher.cancellations is not None
        assert dispatcher.cancellations in dispatcher.sinks

    def test_dispatch_calls_all_sinks(self, mock_event):
        """Test that dispatch calls every enabled sink"""
        extra = MagicMock()
        dispatcher = EventDispatcher(extra_sinks=[extra])
        dispatcher.logger = MagicMock()
        dispatcher.cancellations = MagicMock()

        dispatcher.dispatch(mock_event)

        dispatcher.logger.handle_event.assert_called_once_with(mock_event)
        dispatcher.cancellations.handle_event.assert_called_once_with(mock_event)
        extra.handle_event.assert_called_once_with(mock_event)

    def test_failing_sink_does_not_stop_others(self, mock_event):
        """Test that one failing sink leaves the others running"""
        broken = MagicMock()
        broken.handle_event.side_effect = RuntimeError("disk full")
        healthy = MagicMock()
        dispatcher = EventDispatcher(extra_sinks=[broken, healthy])

        dispatcher.dispatch(mock_event)

        healthy.handle_event.assert_called_once_with(mock_event)

    def test_cancellation_watch_collects_events(self, mock_event):
        """Test that cancellations reach the watch and are kept"""
        dispatcher = EventDispatcher()
        assert dispatcher.cancellations is not None
        dispatcher.dispatch(mock_event)
        assert dispatcher.cancellations.events == [mock_event]
