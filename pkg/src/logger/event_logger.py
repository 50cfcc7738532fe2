"""Interaction event log

Each resolved interaction becomes one JSON line in events.jsonl under the
log directory. The file rotates to events.1, events.2, ... once it passes
SHOCKTRACK_LOG_MAX_SIZE_MB.
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from ..core.base import BaseEventSink
from ..core.types import InteractionEvent
from ..utils.config import is_test_environment
from ..utils.io_helpers import append_jsonl
from ..utils.logger import get_debug_logger
from .config import get_logger_config

UTC = timezone.utc


class EventLogger(BaseEventSink):
    """Appends every interaction of a run to the event log"""

    def __init__(self, log_file: Path | None = None):
        self.config = get_logger_config()
        self.enabled = self.config.enabled
        self.log_file = log_file or self.config.event_log_file
        self.debug_logger = get_debug_logger()

        if self.enabled:
            self.log_file.parent.mkdir(parents=True, exist_ok=True)

    def accepts(self, event: InteractionEvent) -> bool:
        return self.enabled and not is_test_environment() and super().accepts(event)

    def record(self, event: InteractionEvent) -> None:
        entry = {
            "time": datetime.now(UTC).replace(tzinfo=None).isoformat() + "Z",
            "event": event.to_dict(),
        }
        try:
            append_jsonl(entry, self.log_file)
            if self.log_file.stat().st_size > self.config.max_log_size:
                self._rotate()
        except OSError as e:
            self.debug_logger.error(f"Event log {self.log_file} not written: {e}")

    def _numbered(self, n: int) -> Path:
        return self.log_file.with_name(f"{self.log_file.stem}.{n}")

    def _rotate(self) -> None:
        """Shift events.k to events.k+1, dropping the oldest"""
        count = self.config.log_rotation_count
        self._numbered(count).unlink(missing_ok=True)
        for n in range(count - 1, 0, -1):
            if self._numbered(n).exists():
                self._numbered(n).rename(self._numbered(n + 1))
        self.log_file.rename(self._numbered(1))
        self.debug_logger.info(f"Event log rotated, keeping {count} files")

    def get_recent_events(self, count: int = 100, kind: str | None = None) -> list[dict[str, Any]]:
        """Newest ``count`` entries of the current file, oldest first

        ``kind`` keeps only one interaction kind ("crossing", "cancellation",
        ...). Unreadable lines are skipped.
        """
        if not self.log_file.exists():
            return []
        try:
            lines = self.log_file.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            self.debug_logger.error(f"Event log {self.log_file} not readable: {e}")
            return []

        entries: list[dict[str, Any]] = []
        for line in reversed(lines):
            try:
                entry = json.loads(line)
            except json.JSONDecodeError:
                continue
            if kind is not None and entry.get("event", {}).get("kind") != kind:
                continue
            entries.append(entry)
            if len(entries) >= count:
                break
        return entries[::-1]
