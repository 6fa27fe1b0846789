import pytest

_verdicts: list[str] = []


@pytest.fixture
def verdict():
    """Record one acceptance verdict line and assert it holds.

    Lines are replayed by the terminal summary hook below, after capture
    has ended, so each criterion leaves a visible PASS/FAIL trace on
    every run.
    """

    def record(num: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {num:2d} {'PASS' if ok else 'FAIL'}: {detail}"
        _verdicts.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _verdicts:
        terminalreporter.section("acceptance criteria")
        for line in _verdicts:
            terminalreporter.write_line(line)
