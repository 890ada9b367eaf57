import random

import pytest

from nonassoc.exactmath import GF, QQ, RationalFunctionField


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture(scope="session")
def Qt():
    return RationalFunctionField(QQ)


@pytest.fixture(scope="session")
def GF5t():
    return RationalFunctionField(GF(5))


# -- acceptance criteria summary -------------------------------------------------------

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, seconds): acceptance criterion with a time limit")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title, seconds = marker.args
    _CRITERIA.setdefault(number, [title, seconds, True, 0.0])
    entry = _CRITERIA[number]
    entry[2] = entry[2] and report.passed
    entry[3] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, seconds, ok, spent = _CRITERIA[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}  ({spent:.2f} s, limit {seconds} s)")
