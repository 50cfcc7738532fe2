"""Event logger configuration"""

import os
from pathlib import Path

from ..utils.config import get_shocktrack_home


class LoggerConfig:
    """Logger-specific configuration, read from the environment on creation"""

    def __init__(self):
        self.enabled = self._get_bool_env("SHOCKTRACK_EVENT_LOGGING_ENABLED", True)

        log_dir = os.environ.get("SHOCKTRACK_LOG_DIR")
        self.log_dir = Path(log_dir) if log_dir else get_shocktrack_home() / "logs"

        self.event_log_file = self.log_dir / "events.jsonl"
        self.max_log_size = (
            int(os.environ.get("SHOCKTRACK_LOG_MAX_SIZE_MB", "100")) * 1024 * 1024
        )  # MB to bytes
        self.log_rotation_count = int(
            os.environ.get("SHOCKTRACK_LOG_ROTATION_COUNT", "5")
        )

    def _get_bool_env(self, key: str, default: bool) -> bool:
        """Get boolean value from environment variable"""
        value = os.environ.get(key, str(default)).lower()
        return value in ("1", "true", "yes")


def get_logger_config() -> LoggerConfig:
    """Fresh configuration snapshot"""
    return LoggerConfig()
