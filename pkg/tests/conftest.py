import pytest

_CRITERIA: dict[int, str] = {}


class CriterionLog:
    """Collects one verdict line per acceptance criterion."""

    def record(self, number: int, title: str, passed: bool | None, detail: str = "") -> None:
        verdict = "SKIP" if passed is None else ("PASS" if passed else "FAIL")
        _CRITERIA[number] = f"criterion {number} [{verdict}] {title}: {detail}"


@pytest.fixture
def criteria():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])
