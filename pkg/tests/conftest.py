import time
from contextlib import contextmanager

import pytest

_RESULTS = {}


@contextmanager
def _timed_criterion(number, title, limit):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        first = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        _RESULTS[number] = (False, title, elapsed, limit, first)
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    _RESULTS[number] = (ok, title, elapsed, limit, "" if ok else "over time limit")
    assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


@pytest.fixture
def criterion():
    return _timed_criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, title, elapsed, limit, note = _RESULTS[number]
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} ({elapsed:.2f}s / {limit:g}s)"
        if note:
            line += f" -- {note}"
        terminalreporter.write_line(line)
