import pytest

from quadforge.psl2 import indexed_group, psl


@pytest.fixture(scope="session")
def psl9():
    return psl(9)


@pytest.fixture(scope="session")
def ig9(psl9):
    return indexed_group(psl9)


@pytest.fixture(scope="session")
def w2_bundle():
    """The verified coset construction at q = 9: geometry, stabilizers, selection."""
    from quadforge.classify import build_w2

    return build_w2()
