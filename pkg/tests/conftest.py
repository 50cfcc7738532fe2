"""Pytest configuration and shared fixtures"""

import os
import sys
from pathlib import Path

import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.bj_system.flux import SystemParams  # noqa: E402
from src.scenario.params import derive_params  # noqa: E402


@pytest.fixture(autouse=True)
def test_environment(tmp_path_factory):
    """Automatically set TEST_ENVIRONMENT and a throwaway home for all tests"""
    keys = ("SHOCKTRACK_TEST_ENVIRONMENT", "SHOCKTRACK_HOME")
    original = {key: os.environ.get(key) for key in keys}
    os.environ["SHOCKTRACK_TEST_ENVIRONMENT"] = "true"
    os.environ["SHOCKTRACK_HOME"] = str(tmp_path_factory.mktemp("shocktrack_home"))
    yield
    for key, value in original.items():
        if value is None:
            os.environ.pop(key, None)
        else:
            os.environ[key] = value


@pytest.fixture
def temp_log_dir(tmp_path):
    """Create a temporary log directory"""
    log_dir = tmp_path / "logs"
    log_dir.mkdir()
    original = os.environ.get("SHOCKTRACK_LOG_DIR")
    os.environ["SHOCKTRACK_LOG_DIR"] = str(log_dir)
    yield log_dir
    if original is None:
        os.environ.pop("SHOCKTRACK_LOG_DIR", None)
    else:
        os.environ["SHOCKTRACK_LOG_DIR"] = original


@pytest.fixture
def disable_all_sinks(monkeypatch):
    """Disable the event log and the cancellation watch"""
    monkeypatch.setenv("SHOCKTRACK_EVENT_LOGGING_ENABLED", "false")
    monkeypatch.setenv("SHOCKTRACK_CANCELLATION_WATCH_ENABLED", "false")


@pytest.fixture
def system():
    """System parameters with eta = 0.09"""
    return SystemParams(0.09)


@pytest.fixture
def scenario():
    """Derived parameters of the default experiment, eps = 0.3"""
    return derive_params(0.3)
