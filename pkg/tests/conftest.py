import numpy as np
import pytest

from harmconv.geometry import DiskGrid, default_radii
from harmconv.series import order_for_radius


@pytest.fixture(scope="session")
def small_grid():
    """A coarser grid for unit tests; the acceptance suite uses the default one."""
    return DiskGrid(default_radii(levels=10, max_radius=0.95), 128)


@pytest.fixture(scope="session")
def small_order():
    return order_for_radius(0.95)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# One summary line per acceptance criterion, after the normal pytest report.
_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        metrics = dict(report.user_properties)
        _criteria[name] = (report.outcome, metrics)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        outcome, metrics = _criteria[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        detail = ", ".join(f"{k}={v}" for k, v in metrics.items())
        terminalreporter.write_line(f"{verdict}  {name}  {detail}")
