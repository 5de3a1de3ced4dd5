import pytest

from operadkit import kernels
from operadkit.quotient import clear_cache

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    """Run the test once per available elimination backend."""
    prev = kernels.use_backend(request.param)
    clear_cache()
    yield request.param
    kernels.use_backend(prev)
    clear_cache()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    prev = _CRITERIA.get(n, (title, True))
    ok = prev[1] and not rep.failed
    if rep.when == "call" or rep.failed:
        _CRITERIA[n] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}")
