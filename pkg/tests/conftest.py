import sys

import pytest
from hypothesis import HealthCheck, settings

from ncspaces.linalg import GF, QQ

settings.register_profile(
    "ncspaces", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ncspaces")

FIELDS = [GF(2), GF(3), QQ]


@pytest.fixture(params=FIELDS, ids=repr)
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
