"""Global configuration utilities"""

import os
from pathlib import Path


def is_test_environment() -> bool:
    """Check if running in test environment"""
    return os.environ.get("SHOCKTRACK_TEST_ENVIRONMENT", "").lower() in (
        "1",
        "true",
        "yes",
    )


def get_shocktrack_home() -> Path:
    """Get shocktrack home directory"""
    home = Path(os.environ.get("SHOCKTRACK_HOME", Path.home() / ".shocktrack"))
    home.mkdir(parents=True, exist_ok=True)
    return home


def get_log_level() -> str:
    """Get the debug logger level name from environment"""
    return os.environ.get("SHOCKTRACK_LOG_LEVEL", "INFO").upper()


def get_max_workers() -> int | None:
    """Get the batch runner worker count (None lets the pool decide)"""
    value = os.environ.get("SHOCKTRACK_MAX_WORKERS")
    return int(value) if value else None
