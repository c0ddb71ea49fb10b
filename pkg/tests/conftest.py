import time
from contextlib import contextmanager

import pytest

_ACCEPTANCE_LINES: list[str] = []


class AcceptanceLog:
    @contextmanager
    def criterion(self, number: int, title: str, budget_s: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            if ok and elapsed > budget_s:
                ok = False
                title += f" [over time budget {budget_s:g}s]"
            status = "PASS" if ok else "FAIL"
            _ACCEPTANCE_LINES.append(f"criterion {number:>2} {status}  {title}  ({elapsed:.2f}s)")
        assert elapsed <= budget_s, f"criterion {number} took {elapsed:.2f}s > {budget_s}s"


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
