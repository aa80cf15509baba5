import pytest

from algdoe import Design, Word, full_factorial, regular_design_from_words

L8_WORDS = (
    Word((1, 1, 1, 0, 0, 0, 0), -1),
    Word((1, 0, 0, 1, 1, 0, 0), -1),
    Word((0, 1, 0, 1, 0, 1, 0), -1),
    Word((1, 1, 0, 1, 0, 0, 1), +1),
)

# orthogonal array table: rows as published
L8_RUNS = (
    (-1, -1, -1, -1, -1, -1, -1),
    (-1, -1, -1, 1, 1, 1, 1),
    (-1, 1, 1, -1, -1, 1, 1),
    (-1, 1, 1, 1, 1, -1, -1),
    (1, -1, 1, -1, 1, -1, 1),
    (1, -1, 1, 1, -1, 1, -1),
    (1, 1, -1, -1, 1, 1, -1),
    (1, 1, -1, 1, -1, -1, 1),
)

# 2^{7-3}: x1x2x4x5 = x1x3x4x6 = x2x3x4x7 = 1, tabulated from all-plus down
W16_WORDS = (
    Word((1, 1, 0, 1, 1, 0, 0), +1),
    Word((1, 0, 1, 1, 0, 1, 0), +1),
    Word((0, 1, 1, 1, 0, 0, 1), +1),
)

THREE_LEVEL_RUNS = (
    (0, 0, 0),
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 1, 1),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
    (2, 2, 2),
)


@pytest.fixture(scope="session")
def l8():
    return Design(7, 2, L8_RUNS, "pm1")


@pytest.fixture(scope="session")
def w16():
    d = regular_design_from_words(7, W16_WORDS)
    return Design(7, 2, tuple(sorted(d.runs, reverse=True)), "pm1")


@pytest.fixture(scope="session")
def f1():
    return Design(3, 2, ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)), "pm1")


@pytest.fixture(scope="session")
def f2():
    return Design(3, 2, ((1, 1, 1), (1, -1, -1), (-1, 1, -1)), "pm1")


@pytest.fixture(scope="session")
def f3():
    return Design(3, 2, ((1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)), "pm1")


@pytest.fixture(scope="session")
def d22():
    # run order: ++, +-, -+, --
    return Design(2, 2, ((1, 1), (1, -1), (-1, 1), (-1, -1)), "pm1")


@pytest.fixture(scope="session")
def three_level_integer():
    return Design(3, 3, THREE_LEVEL_RUNS, "integer")


@pytest.fixture(scope="session")
def three_level_complex():
    return Design(3, 3, THREE_LEVEL_RUNS, "complex")


def random_two_level_design(rng, m, n=None):
    pool = list(full_factorial(m).runs)
    if n is None:
        n = rng.randint(1, len(pool))
    return Design(m, 2, tuple(sorted(rng.sample(pool, n))), "pm1")
