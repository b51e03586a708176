import pytest

from evenlat.reconstruct import reconstruct_24, reconstruct_xprime


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=0,
        help="base seed for the randomized property suites",
    )


@pytest.fixture(scope="session")
def seed_base(request):
    return request.config.getoption("--seed")


@pytest.fixture(scope="session")
def reconstruction():
    return reconstruct_24()


@pytest.fixture(scope="session")
def gram24(reconstruction):
    return reconstruction.gram


@pytest.fixture(scope="session")
def config24(reconstruction):
    return reconstruction.config()


@pytest.fixture(scope="session")
def xprime(config24):
    return reconstruct_xprime(config24)
