"""Error log and debug logger

Errors that end a run (solver failures, unexpected exceptions) are appended
to <home>/errors.log as JSON lines, together with whatever diagnostics the
error carried, so a truncated run can be replayed from the log alone.
"""

import logging
import sys
import traceback
from datetime import datetime
from pathlib import Path
from typing import Any

from .config import get_log_level, get_shocktrack_home
from .io_helpers import append_jsonl

ERROR_LOG_FILE = "errors.log"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class ErrorLogger:
    """Appends one JSON line per failure"""

    def __init__(self, log_file: Path | None = None):
        self.log_file = log_file or get_shocktrack_home() / ERROR_LOG_FILE
        self.log_file.parent.mkdir(parents=True, exist_ok=True)

    def log_error(
        self,
        error_type: str,
        error_message: str,
        context: dict[str, Any] | None = None,
        exception: BaseException | None = None,
    ) -> None:
        """Record a failure

        ``context`` is stored as is; non-finite floats in event dumps are
        written as strings.
        """
        entry: dict[str, Any] = {
            "timestamp": datetime.now().isoformat(),
            "error_type": error_type,
            "error_message": error_message,
            "context": context or {},
        }
        if exception is not None:
            entry["traceback"] = traceback.format_exception(exception)

        try:
            append_jsonl(entry, self.log_file)
        except (OSError, TypeError, ValueError) as e:
            print(f"Failed to write to error log {self.log_file}: {e}", file=sys.stderr)


class DebugLogger:
    """Progress and warning messages on stderr

    The level comes from SHOCKTRACK_LOG_LEVEL; tracking runs log every
    truncation and rejected input at WARNING or above.
    """

    def __init__(self, name: str = "shocktrack"):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(get_log_level())

        if not self.logger.handlers:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter(LOG_FORMAT))
            self.logger.addHandler(handler)

    def debug(self, message: str, **kwargs: Any) -> None:
        self.logger.debug(message, **kwargs)

    def info(self, message: str, **kwargs: Any) -> None:
        self.logger.info(message, **kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        self.logger.warning(message, **kwargs)

    def error(self, message: str, exc_info: bool = False, **kwargs: Any) -> None:
        self.logger.error(message, exc_info=exc_info, **kwargs)


_error_logger: ErrorLogger | None = None
_debug_logger: DebugLogger | None = None


def get_error_logger() -> ErrorLogger:
    """Shared error log under the current home directory"""
    global _error_logger
    if _error_logger is None or not _error_logger.log_file.is_relative_to(
        get_shocktrack_home()
    ):
        _error_logger = ErrorLogger()
    return _error_logger


def get_debug_logger() -> DebugLogger:
    """Shared debug logger"""
    global _debug_logger
    if _debug_logger is None:
        _debug_logger = DebugLogger()
    return _debug_logger
