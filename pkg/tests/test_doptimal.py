import random

import pytest

from algdoe import (
    Design,
    InputError,
    ScaleError,
    SearchSpec,
    d_criterion,
    d_optimal_search,
    full_factorial,
)
from algdoe.doptimal import int_det

from conftest import random_two_level_design


def test_int_det_basics():
    assert int_det([[2, 0], [0, 3]]) == 6
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[1, 2], [2, 4]]) == 0
    assert int_det([[4]]) == 4


def test_int_det_matches_permanent_free_expansion():
    rng = random.Random(8)
    import itertools

    for _ in range(20):
        n = rng.randint(1, 4)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        expected = 0
        for perm in itertools.permutations(range(n)):
            sign = 1
            seen = list(perm)
            # count inversions for the permutation sign
            inv = sum(
                1
                for i in range(n)
                for j in range(i + 1, n)
                if seen[i] > seen[j]
            )
            sign = -1 if inv % 2 else 1
            prod = 1
            for i in range(n):
                prod *= m[i][perm[i]]
            expected += sign * prod
        assert int_det(m) == expected


def test_d_criterion_fixtures(f1):
    assert d_criterion(full_factorial(2)) == 64
    assert d_criterion(f1) == 256
    short = Design(3, 2, ((1, 1, 1), (-1, -1, -1)), "pm1")
    assert d_criterion(short) == 0  # n < m + 1 forces rank deficiency


def test_d_criterion_invariances():
    rng = random.Random(5)
    for _ in range(10):
        d = random_two_level_design(rng, 3, n=rng.randint(4, 8))
        base = d_criterion(d)
        permuted = Design(3, 2, tuple(rng.sample(d.runs, d.n)), "pm1")
        assert d_criterion(permuted) == base
        j = rng.randrange(3)
        flipped_runs = tuple(
            tuple(-v if i == j else v for i, v in enumerate(run)) for run in d.runs
        )
        assert d_criterion(Design(3, 2, flipped_runs, "pm1")) == base


def test_exhaustive_m2_n4():
    res = d_optimal_search(SearchSpec(m=2, n=4))
    assert res.best_det == 64
    assert len(res.optima) == 1
    assert res.optima[0].runs == full_factorial(2).runs
    assert res.class_histogram() == {"full-factorial": 1}


def test_exhaustive_m3_n4_finds_both_half_fractions():
    res = d_optimal_search(SearchSpec(m=3, n=4))
    assert res.best_det == 256
    assert len(res.optima) == 2
    assert res.class_histogram() == {"regular": 2}
    words = {tuple(c.words) for c in res.classifications}
    signs = {w[0].sign for w in words}
    assert signs == {-1, 1}  # the two opposite half fractions


def test_greedy_never_beats_exhaustive():
    exhaustive = d_optimal_search(SearchSpec(m=3, n=4))
    greedy = d_optimal_search(
        SearchSpec(m=3, n=4, mode="greedy-exchange", seed=17, restarts=8)
    )
    assert greedy.best_det <= exhaustive.best_det
    assert not greedy.exhaustive


def test_greedy_deterministic_given_seed():
    a = d_optimal_search(SearchSpec(m=3, n=5, mode="greedy-exchange", seed=3, restarts=4))
    b = d_optimal_search(SearchSpec(m=3, n=5, mode="greedy-exchange", seed=3, restarts=4))
    assert a.best_det == b.best_det
    assert a.optima[0].runs == b.optima[0].runs


def test_scale_cap():
    with pytest.raises(ScaleError):
        d_optimal_search(SearchSpec(m=6, n=12))


def test_spec_validation():
    with pytest.raises(InputError):
        SearchSpec(m=2, n=5)
    with pytest.raises(InputError):
        SearchSpec(m=2, n=2, mode="annealing")
