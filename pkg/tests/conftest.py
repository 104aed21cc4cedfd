from __future__ import annotations

import pytest
from hypothesis import settings

# fixed example generation keeps runs reproducible and their cost predictable
settings.register_profile("repro", derandomize=True, print_blob=True)
settings.load_profile("repro")

# (criterion number, description) -> outcome, filled as acceptance tests report
_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": True, "tests": 0})
    entry["tests"] += 1
    if call.excinfo is not None:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number:2d}: {entry['title']} ({entry['tests']} tests)")


@pytest.fixture(scope="session")
def algebras():
    from cmhopf.hopf import HopfAlgebra

    return {n: HopfAlgebra(n) for n in (1, 2, 3)}
