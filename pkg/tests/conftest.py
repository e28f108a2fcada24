import pytest

from hermcert import kernels


@pytest.fixture(params=[m.IMPLEMENTATION for m in kernels.available()])
def kernel(request):
    """Each importable kernel implementation in turn."""
    return {m.IMPLEMENTATION: m for m in kernels.available()}[request.param]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
