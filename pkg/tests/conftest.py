"""Shared fixtures and the per-criterion summary printed at the end of a run."""
import pytest

CRITERIA: dict[int, str] = {}


@pytest.fixture
def record():
    """record(n, ok, detail) stores one acceptance verdict."""

    def _record(n: int, ok: bool, detail: str = "") -> None:
        CRITERIA[n] = ("PASS" if ok else "FAIL") + (f"  {detail}" if detail else "")
        print(f"criterion {n}: {CRITERIA[n]}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(f"criterion {n:>2}: {CRITERIA[n]}")
