import numpy as np
import pytest
from hypothesis import settings

from frslist.experiments import load_config

settings.register_profile("default", max_examples=100, deadline=None, derandomize=True)
settings.load_profile("default")


@pytest.fixture
def tiny():
    return load_config("tiny")


@pytest.fixture
def medium():
    return load_config("medium")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
