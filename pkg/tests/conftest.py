import pytest

from liecones import catalog


@pytest.fixture(scope="session")
def corpus():
    """All canonical catalog entries, built once per session."""
    return {key: catalog.build(key) for key in catalog.list_keys()}


@pytest.fixture(scope="session")
def algebra():
    def get(key):
        return catalog.build(key).algebra
    return get
