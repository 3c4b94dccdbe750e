import mpmath
import pytest

mpmath.mp.dps = 40


def pytest_addoption(parser):
    parser.addoption("--jobs", type=int, default=1, help="worker processes for the slow Gram checks")


@pytest.fixture(scope="session")
def jobs(request):
    return request.config.getoption("--jobs")
