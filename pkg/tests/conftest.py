import numpy as np
import pytest

from powerpvq import kernels

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, title, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{num:2d}] {title}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240)


BACKENDS = kernels.available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param
