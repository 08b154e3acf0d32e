import pytest

from orthokit import build_pants, enumerate_orthospectrum


@pytest.fixture(scope="session")
def pants111():
    return build_pants(1.0, 1.0, 1.0)


@pytest.fixture(scope="session")
def pants123():
    return build_pants(1.0, 2.0, 3.0)


@pytest.fixture(scope="session")
def spectrum111_12(pants111):
    # shared by the convergence and Monte Carlo cross-checks; ~2 s to build
    return enumerate_orthospectrum(pants111, 12.0)
