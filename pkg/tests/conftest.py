import pytest

_REPORT: list[tuple[int, bool, str]] = []


class AcceptanceReport:
    """Collects one verdict per acceptance criterion and fails the test on FAIL."""

    def record(self, number: int, title: str, failures: list[str], detail: str = "") -> None:
        ok = not failures
        text = f"{title}: {detail}" if ok else f"{title}: " + "; ".join(failures)
        _REPORT.append((number, ok, text))
        print(f"{'PASS' if ok else 'FAIL'} criterion {number:>2}  {text}")
        assert ok, "; ".join(failures)


@pytest.fixture
def acceptance():
    return AcceptanceReport()


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(_REPORT):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:>2}  {text}")
