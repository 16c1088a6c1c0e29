import pytest

from khessian.radial import HessianOrder
from khessian.solver import SolverConfig, sweep

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def default_cfg():
    return SolverConfig()


@pytest.fixture(scope="session")
def table(default_cfg):
    """Converged results for 1 <= k <= n <= 20 plus the diagonal up to n = 25."""
    orders = [HessianOrder(k, n) for n in range(2, 21) for k in range(1, n + 1)]
    orders += [HessianOrder(n, n) for n in range(21, 26)]
    results = sweep(orders, default_cfg)
    return {(r.order.k, r.order.n): r for r in results}


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
