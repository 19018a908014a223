import pytest

from iufst import gen_block, gen_block_nfa, gen_copy, gen_d, gen_e, gen_uexpo, gen_unary


@pytest.fixture(scope="session")
def d_machine():
    return gen_d()


@pytest.fixture(scope="session")
def block2():
    return gen_block(2)


@pytest.fixture(scope="session")
def block_nfa2():
    return gen_block_nfa(2)


@pytest.fixture(scope="session")
def copy_machine():
    return gen_copy()


@pytest.fixture(scope="session")
def uexpo_machine():
    return gen_uexpo()


@pytest.fixture(scope="session")
def e21():
    return gen_e(2, 1)


@pytest.fixture(scope="session")
def e22():
    return gen_e(2, 2)


@pytest.fixture(scope="session")
def unary22():
    return gen_unary(2, 2)
