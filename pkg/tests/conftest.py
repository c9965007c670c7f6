import pytest

from polaris.catalog import build_preset, preset_names


@pytest.fixture(scope="session")
def space():
    """Memoized preset builder shared across the whole test session."""
    def get(name):
        return build_preset(name)
    return get


@pytest.fixture(scope="session")
def all_preset_names():
    return preset_names()
