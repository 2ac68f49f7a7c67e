import pytest

from hessarr.lowerideal import enumerate_lower_ideals
from hessarr.rootsystem import RootSystem


@pytest.fixture(scope="session")
def ideals_of():
    cache = {}

    def get(family, rank):
        key = (family, rank)
        if key not in cache:
            cache[key] = enumerate_lower_ideals(RootSystem.build(family, rank))
        return cache[key]

    return get
