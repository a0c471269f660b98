import pytest

# (q, g, r, delta, k, t)
GRID = [
    (5, 3, 1, 1, 1, 1),
    (5, 3, 1, 1, 2, 1),
    (5, 3, 1, 2, 1, 1),
    (5, 3, 1, 2, 2, 1),
    (5, 4, 1, 2, 2, 1),
    (5, 3, 2, 2, 1, 1),
    (5, 3, 2, 2, 2, 1),
    (5, 3, 2, 2, 3, 1),
    (5, 4, 2, 2, 2, 2),
    (7, 5, 2, 2, 4, 2),
    (7, 3, 3, 2, 3, 1),
]

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for mark in report.user_properties:
        if mark[0] == "criterion":
            # a criterion passes only if every test tagged with it passed
            if _results.get(mark[1], "passed") == "passed":
                _results[mark[1]] = report.outcome


@pytest.fixture
def criterion(record_property):
    def _set(label):
        record_property("criterion", label)
    return _set


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_results):
        outcome = "PASS" if _results[label] == "passed" else "FAIL"
        terminalreporter.write_line(f"{label}: {outcome}")
