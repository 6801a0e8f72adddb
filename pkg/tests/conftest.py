import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qapdelta import Permutation, RngState, random_instance  # noqa: E402
from qapdelta._backend import compiled_available  # noqa: E402

ACCEPTANCE_LINES = []


def record_criterion(number, title, passed, detail=""):
    line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}"
    if detail:
        line += f" -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


BACKEND_PARAMS = ["python"] + (["compiled"] if compiled_available() else [])


@pytest.fixture(params=BACKEND_PARAMS)
def backend(request):
    return request.param


@pytest.fixture(params=["general", "symmetric_zero_diag"])
def shape(request):
    return request.param


def make_case(n, seed, shape="general", max_entry=9):
    inst = random_instance(n, max_entry, seed, shape)
    perm = Permutation.random(n, RngState(seed ^ 0x5EED))
    return inst, perm
