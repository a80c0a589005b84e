import pytest

ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


@pytest.fixture
def record():
    def _record(n: int, passed: bool, tolerance: str, detail: str):
        ACCEPTANCE[n] = (passed, tolerance, detail)
        print(f"criterion {n:2d} [{tolerance}] {'PASS' if passed else 'FAIL'}: {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, tol, detail = ACCEPTANCE[n]
        terminalreporter.write_line(
            f"criterion {n:2d} [{tol}] {'PASS' if passed else 'FAIL'}: {detail}")
