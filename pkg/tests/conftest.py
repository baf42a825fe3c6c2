import contextlib
import time

import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Context manager recording one acceptance line: number, description, verdict, runtime."""

    @contextlib.contextmanager
    def record(number, description, budget_s=None):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            _ACCEPTANCE.append((number, description, "FAIL", time.perf_counter() - start, repr(exc)[:160]))
            raise
        elapsed = time.perf_counter() - start
        if budget_s is not None and elapsed > budget_s:
            _ACCEPTANCE.append((number, description, "FAIL", elapsed, f"over budget {budget_s}s"))
            pytest.fail(f"criterion {number} took {elapsed:.2f}s > {budget_s}s")
        _ACCEPTANCE.append((number, description, "PASS", elapsed, ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, verdict, elapsed, note in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        line = f"[{verdict}] {number:>2}. {description} ({elapsed:.2f}s)"
        if note:
            line += f" -- {note}"
        terminalreporter.write_line(line)
