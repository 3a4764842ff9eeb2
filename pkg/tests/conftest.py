import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from commqual.cover import Cover  # noqa: E402
from commqual.graph import Graph  # noqa: E402


@pytest.fixture
def barbell():
    # two triangles joined by the bridge 2-3
    return Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def triangles():
    return Cover([[0, 1, 2], [3, 4, 5]], 6)


@pytest.fixture
def two_triangles():
    return Graph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def star():
    return Graph.from_edges([(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def k4():
    return Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def path3():
    return Graph.from_edges([(0, 1), (1, 2)])


@pytest.fixture
def edge():
    return Graph.from_edges([(0, 1)])


# --------------------------------------------------------------------------
# acceptance reporting: one PASS/FAIL line per criterion in the summary

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, text = marker
    entry = _criteria.setdefault(number, [text, True])
    entry[1] = entry[1] and report.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report._criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {text}")
