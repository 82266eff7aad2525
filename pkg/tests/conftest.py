import pytest

from govatlas.fixtures import fixture_atlas


@pytest.fixture(scope="session")
def atlas16():
    return fixture_atlas()
