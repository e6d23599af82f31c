import numpy as np
import pytest
from scipy.stats import qmc

from pagelab import metrics


def halton_points(domain, n, seed=0):
    """Scrambled Halton points inside ``domain`` (deterministic)."""
    u = qmc.Halton(d=1, seed=seed).random(n)[:, 0]
    t0, t1 = domain
    return t0 + (t1 - t0) * u


@pytest.fixture(scope="session")
def pc():
    return metrics.solve_page_constant()


@pytest.fixture(scope="session")
def page_r(pc):
    return metrics.page_metric_r(pc)


@pytest.fixture(scope="session")
def page_x(pc):
    return metrics.page_metric_x(pc)


@pytest.fixture(scope="session")
def s4():
    return metrics.round_sphere_metric()


@pytest.fixture(scope="session")
def fs():
    return metrics.fubini_study_metric()


@pytest.fixture(scope="session")
def flat():
    return metrics.flat_metric()


@pytest.fixture(scope="session")
def catalog(page_r, page_x, s4, fs, flat):
    return {"page-r": page_r, "page-x": page_x, "s4": s4, "fs": fs, "flat": flat}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
