import pytest
from hypothesis import settings

# big-integer work makes per-example timing noisy
settings.register_profile("trapred", deadline=None)
settings.load_profile("trapred")

_CRITERIA: list[str] = []


@pytest.fixture
def report_criterion():
    """Record a one-line PASS/FAIL verdict and return the boolean for asserting."""

    def record(number: int, title: str, ok: bool, detail: str) -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
        _CRITERIA.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
