import sys

import pytest

from fingames import fixtures


@pytest.fixture
def fig3():
    return fixtures.build("fig3").obj


@pytest.fixture
def uniparity():
    return fixtures.build("uniparity").obj



def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
