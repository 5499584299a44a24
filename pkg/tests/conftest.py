from pathlib import Path

import pytest

from rchull.io import read_polygon
from rchull.polygon import make_region_pair

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def demo_pair():
    return make_region_pair(read_polygon(DATA / "demo_A.poly"), read_polygon(DATA / "demo_B.poly"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
