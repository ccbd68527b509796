import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_outcomes: dict = {}
_notes: dict = {}


@pytest.fixture
def note(request):
    """Attach a short note to the acceptance line of the calling test."""
    def add(text: str):
        _notes.setdefault(request.node.nodeid, []).append(text)
    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes[item.nodeid] = (number, title, rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for nodeid, (number, title, passed, duration) in sorted(_outcomes.items(), key=lambda kv: kv[1][0]):
        extra = "; ".join(_notes.get(nodeid, []))
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title} ({duration:.2f}s)"
        tr.write_line(line + (f" [{extra}]" if extra else ""))
