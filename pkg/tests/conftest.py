import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: list[tuple[str, bool, float]] = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion as PASS/FAIL for the end-of-run summary."""

    @contextmanager
    def record(name: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _RESULTS.append((name, False, time.perf_counter() - start))
            raise
        _RESULTS.append((name, True, time.perf_counter() - start))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, secs in _RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({secs:.2f}s)")
