import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    import acceptance
    if acceptance.SUMMARY:
        terminalreporter.section("acceptance criteria")
        for k in sorted(acceptance.SUMMARY):
            terminalreporter.write_line(acceptance.SUMMARY[k])
