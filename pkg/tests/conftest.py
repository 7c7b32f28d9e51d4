import pytest

from cutspace.gallery import (
    antichain_carrier,
    chain_carrier,
    diamond_carrier,
    ex_antichain_carrier,
    ex_omega_carrier,
    ex_topz_carrier,
    v_carrier,
)


@pytest.fixture
def omega():
    return ex_omega_carrier()


@pytest.fixture
def topz():
    return ex_topz_carrier()


@pytest.fixture
def antichain():
    return ex_antichain_carrier()


@pytest.fixture
def chain2():
    return chain_carrier("x", "y")


@pytest.fixture
def chain3():
    return chain_carrier("x", "y", "z")


@pytest.fixture
def vee():
    return v_carrier()


@pytest.fixture
def diamond():
    return diamond_carrier()
