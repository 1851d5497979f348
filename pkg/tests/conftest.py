import pytest

_RESULTS: dict[int, list[tuple[bool, str]]] = {}


@pytest.fixture(scope="session")
def record():
    """record(criterion, ok, detail): collect one verdict part for the summary."""

    def _record(criterion: int, ok: bool, detail: str) -> None:
        _RESULTS.setdefault(criterion, []).append((bool(ok), detail))
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_RESULTS):
        parts = _RESULTS[criterion]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
