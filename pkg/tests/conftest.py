import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src import logging_service  # noqa: E402
from src.fixtures import cross_window, sample_window, square_spec, staircase_spec  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_logging_service(monkeypatch):
    # the console handler binds sys.stderr when the service is built
    monkeypatch.setattr(logging_service, "_logging_service", None)
    yield


@pytest.fixture
def sample():
    return sample_window()


@pytest.fixture
def cross():
    return cross_window()


@pytest.fixture
def staircase():
    return staircase_spec()


@pytest.fixture
def square():
    return square_spec()
