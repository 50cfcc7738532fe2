"""Watch for shock cancellations during an evolution"""

from ..core.base import BaseEventSink
from ..core.types import InteractionEvent, InteractionKind
from ..utils.logger import get_debug_logger


class CancellationWatch(BaseEventSink):
    """Collects cancellation events and reports each one once"""

    kinds = frozenset({InteractionKind.CANCELLATION})

    def __init__(self):
        self.debug_logger = get_debug_logger()
        self.events: list[InteractionEvent] = []

    def record(self, event: InteractionEvent) -> None:
        self.events.append(event)
        erased = event.details.get("erased_strength", 0.0)
        self.debug_logger.warning(
            f"Cancellation at t={event.t:.6g}, x={event.x:.6g}: "
            f"shock strength reduced by {erased:.3e}"
        )
