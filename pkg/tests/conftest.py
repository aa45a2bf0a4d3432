import pytest

from longcycle import build_digraph, gen_complete

FOUR_ARCS = [(0, 1), (1, 2), (2, 0), (0, 2), (2, 3), (3, 0)]

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[number] = (title, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number}: {title}")


@pytest.fixture
def c3():
    return build_digraph(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def four():
    """Two triangles sharing vertices 0 and 2: 0-1-2-0 and 0-2-3-0."""
    return build_digraph(4, FOUR_ARCS)


@pytest.fixture
def k4():
    return gen_complete(4)
