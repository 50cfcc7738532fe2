"""Sink interface for interaction events"""

from abc import ABC, abstractmethod
from typing import ClassVar, Protocol

from .types import InteractionEvent, InteractionKind


class EventSink(Protocol):
    """Anything the dispatcher can hand an interaction to"""

    def handle_event(self, event: InteractionEvent) -> None: ...


class BaseEventSink(ABC):
    """Sink that records the interactions it accepts

    ``kinds`` restricts a sink to some interaction kinds; None accepts all.
    Subclasses add further conditions by extending ``accepts``.
    """

    kinds: ClassVar[frozenset[InteractionKind] | None] = None

    def accepts(self, event: InteractionEvent) -> bool:
        return self.kinds is None or event.kind in self.kinds

    def handle_event(self, event: InteractionEvent) -> None:
        if self.accepts(event):
            self.record(event)

    @abstractmethod
    def record(self, event: InteractionEvent) -> None:
        """Store or report one accepted interaction"""
