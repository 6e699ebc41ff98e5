from __future__ import annotations

import re

import pytest

_RESULTS: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    if hasattr(rep, "wasxfail"):
        status = "XFAIL" if rep.skipped else "XPASS"
    else:
        status = "PASS" if rep.passed else "FAIL"
    detail = getattr(item, "criterion_detail", "")
    _RESULTS.setdefault(mark.args[0], []).append((status, detail))


@pytest.fixture
def report(request):
    """Attach a one-line summary to the criterion printed at the end."""
    def put(text: str) -> None:
        request.node.criterion_detail = text
    return put


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def key(label: str):
        m = re.match(r"(\d+)(.*)", label)
        return (int(m.group(1)), m.group(2)) if m else (10**9, label)

    for label in sorted(_RESULTS, key=key):
        for status, detail in _RESULTS[label]:
            terminalreporter.write_line(f"{status:5} criterion {label}: {detail}")
