from __future__ import annotations

import pytest

from vtue import _backend

BACKENDS = ["numpy"] + (["cython"] if _backend.compiled_available() else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return _backend.get(request.param)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
