import pytest

from gridball.gf import make_field


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2)


def naive_evaluate(f, x):
    """Independent re-evaluation: expand each term by repeated multiplication.

    Used as the oracle for SparsePoly.evaluate; shares no exponentiation or
    batching code with the implementation under test.
    """
    total = f.field.zero
    for exps, c in f.terms.items():
        t = c
        for xi, e in zip(x, exps):
            for _ in range(e):
                t = t * xi
        total = total + t
    return total
