import pytest

from rprime.multsieve import build_table
from rprime.numberfield import make_monogenic, make_quadratic, make_rational

# the standing cast: one field per splitting flavor plus a cubic
FIELD_SPECS = ("rational", "quad:-1", "quad:2", "quad:-5", "poly:-1,-1,0,1")


@pytest.fixture(scope="session")
def rat():
    return make_rational()


@pytest.fixture(scope="session")
def gauss():
    return make_quadratic(-1)


@pytest.fixture(scope="session")
def real2():
    return make_quadratic(2)


@pytest.fixture(scope="session")
def qm5():
    return make_quadratic(-5)


@pytest.fixture(scope="session")
def cubic():
    return make_monogenic((-1, -1, 0, 1))


@pytest.fixture(scope="session")
def five_fields(rat, gauss, real2, qm5, cubic):
    return (rat, gauss, real2, qm5, cubic)


@pytest.fixture(scope="session")
def tables_300(five_fields):
    return {K.spec_string(): build_table(K, 300) for K in five_fields}
