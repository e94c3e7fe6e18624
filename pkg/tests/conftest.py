import math

import pytest

from polytors import _kernels_py

try:
    from polytors import _kernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
BACKENDS.append(
    pytest.param(_compiled, id="cython", marks=pytest.mark.skipif(_compiled is None, reason="extension not built"))
)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def vp(value, p):
    """p-adic valuation by repeated division (test oracle)."""
    assert value > 0
    e = 0
    while value % p == 0:
        value //= p
        e += 1
    return e


def binomial_valuation(N, n, p):
    return vp(math.comb(N, n), p)


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _criteria[number] = (title, report.passed, round(report.duration, 2))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed, secs = _criteria[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title} ({secs}s)")
