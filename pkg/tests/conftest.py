import math

import pytest
from hypothesis import HealthCheck, settings

from pegame import GameParams, GameState

settings.register_profile("default", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def scenario1():
    return GameState(0.0, 0.0, 0.0, 1.0, 1.0, 1.0), GameParams(1.0, 10.0, 0.5)


@pytest.fixture
def scenario2():
    return GameState(0.0, 0.0, 0.0, 1.0, 5.0, 5.0), GameParams(1.0, 2.0, 0.5)


def angle_diff(a, b):
    return abs((a - b + math.pi) % (2.0 * math.pi) - math.pi)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
