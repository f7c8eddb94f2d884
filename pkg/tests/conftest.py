import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line; the summary is printed at the end of the run."""

    def record(number: int, ok: bool, detail: str = ""):
        _LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
        print(_LINES[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
