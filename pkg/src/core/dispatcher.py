"""Event dispatcher for interaction events"""

import os

from ..utils.logger import get_debug_logger
from .base import EventSink
from .types import InteractionEvent


class EventDispatcher:
    """Dispatches interaction events to the enabled sinks"""

    def __init__(self, extra_sinks: list[EventSink] | None = None):
        self.debug_logger = get_debug_logger()
        self.logger: EventSink | None = self._init_logger()
        self.cancellations: EventSink | None = self._init_cancellation_watch()
        self.extra_sinks: list[EventSink] = list(extra_sinks or [])

    def _init_logger(self) -> EventSink | None:
        """Initialize the JSONL event logger if enabled"""
        if os.getenv("SHOCKTRACK_EVENT_LOGGING_ENABLED", "true").lower() == "true":
            try:
                from ..logger.event_logger import EventLogger

                return EventLogger()
            except ImportError:
                self.debug_logger.warning("Event logger module not found")
                return None
        return None

    def _init_cancellation_watch(self) -> EventSink | None:
        """Initialize the cancellation watch if enabled"""
        if (
            os.getenv("SHOCKTRACK_CANCELLATION_WATCH_ENABLED", "true").lower()
            == "true"
        ):
            from ..logger.cancellation_watch import CancellationWatch

            return CancellationWatch()
        return None

    @property
    def sinks(self) -> list[EventSink]:
        builtin = [sink for sink in (self.logger, self.cancellations) if sink]
        return builtin + self.extra_sinks

    def dispatch(self, event: InteractionEvent) -> None:
        """Dispatch event to all enabled sinks

        A failing sink never stops the evolution.
        """
        for sink in self.sinks:
            try:
                sink.handle_event(event)
            except Exception as e:
                self.debug_logger.error(
                    f"{type(sink).__name__} failed on event {event.index}: {e}"
                )
