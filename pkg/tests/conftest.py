import pytest

from lazytwist.fixtures import builtin_group


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = builtin_group(name)
        return cache[name]

    return get
