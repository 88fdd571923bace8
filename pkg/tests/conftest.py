import pytest

from styleforge.backends import load_backends
from styleforge.datasets import get_dataset, toyvolt_backends_path
from styleforge.textcore import TransferDirection


@pytest.fixture(scope="session")
def toyvolt():
    return get_dataset("toyvolt")


@pytest.fixture(scope="session")
def toyvolt_backends():
    return load_backends(toyvolt_backends_path())


@pytest.fixture(scope="session")
def neg2pos():
    return TransferDirection("negative", "positive")
