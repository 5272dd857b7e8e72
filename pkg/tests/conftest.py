import pytest

from treelattice.runtime import settings


@pytest.fixture(autouse=True)
def default_settings():
    settings.reset()
    yield
    settings.reset()


@pytest.fixture
def exact_integers():
    settings.configure(integers=settings.IntegerPolicy.EXACT)
    yield
