import contextlib

import pytest

_lines = []


@pytest.fixture
def record_acceptance():
    @contextlib.contextmanager
    def record(number, title):
        try:
            yield
        except BaseException:
            _emit(f"ACCEPTANCE {number} FAIL  {title}")
            raise
        _emit(f"ACCEPTANCE {number} PASS  {title}")
    return record


def _emit(line):
    _lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for line in _lines:
            terminalreporter.write_line(line)
