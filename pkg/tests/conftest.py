import pytest

from clusterforge import (LaurentPolynomial, build_family, build_gale_robinson,
                          FamilySpec, make_quiver)


def poly(nvars, terms):
    return LaurentPolynomial(nvars, terms)


@pytest.fixture(scope="session")
def k2():
    return make_quiver([[0, 2], [-2, 0]])


@pytest.fixture(scope="session")
def k3():
    return make_quiver([[0, 3], [-3, 0]])


@pytest.fixture(scope="session")
def a2():
    return make_quiver([[0, 1], [-1, 0]])


@pytest.fixture(scope="session")
def a3_path():
    return make_quiver([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])


@pytest.fixture(scope="session")
def a12():
    return build_family(FamilySpec.of("a1r", r=2))


@pytest.fixture(scope="session")
def dp1():
    return build_gale_robinson(4, 2, 1)


@pytest.fixture(scope="session")
def g723():
    return build_gale_robinson(7, 2, 3)


@pytest.fixture(scope="session")
def b21():
    # smallest honestly skew-symmetrizable (non-skew-symmetric) quiver
    return make_quiver([[0, 1], [-2, 0]])


def random_skew_symmetric(rng, v, max_entry=2):
    b = [[0] * v for _ in range(v)]
    for i in range(v):
        for j in range(i + 1, v):
            x = rng.randint(-max_entry, max_entry)
            b[i][j] = x
            b[j][i] = -x
    return make_quiver(b)


def random_sequence(rng, v, length):
    return tuple(rng.randint(1, v) for _ in range(length))
