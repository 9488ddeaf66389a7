import os

import pytest
from hypothesis import HealthCheck, settings

from qpskew.action import make_choices
from qpskew.construct import Transport
from qpskew.instance import bundled

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class Loaded:
    """An instance with its monomial action, potential, choices and transport."""

    def __init__(self, name):
        self.inst = bundled(name)
        self.act, self.base_change, self.W = self.inst.monomial()
        self.choices = make_choices(self.act, self.inst.choices_seed)
        self.T = Transport(self.act, self.choices)
        self.Q = self.act.quiver
        self.G = self.act.group


@pytest.fixture(scope="session")
def paper():
    return Loaded("paper_z3xz3")


@pytest.fixture(scope="session")
def kronecker():
    return Loaded("kronecker_z2")


@pytest.fixture(scope="session")
def trivial():
    return Loaded("trivial")


def pytest_terminal_summary(terminalreporter):
    from acceptance_lines import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
