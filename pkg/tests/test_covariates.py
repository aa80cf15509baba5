import pytest

from algdoe import (
    EstimabilityError,
    InputError,
    build_covariate_matrix,
    recode_integer,
)
from algdoe.covariates import parse_model_terms
from algdoe.cyclotomic import omega


def term(m, *idx):
    return tuple(1 if i + 1 in idx else 0 for i in range(m))


def main_effects(m):
    return [term(m)] + [term(m, j) for j in range(1, m + 1)]


PUBLISHED_COLUMNS = {
    # rows of the transposed 16-run covariate display
    "1": [1] * 16,
    "x1": [1] * 8 + [-1] * 8,
    "x2": [1, 1, 1, 1, -1, -1, -1, -1] * 2,
    "x3": [1, 1, -1, -1] * 4,
    "x6": [1, -1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 1, -1],
    "x7": [1, -1, -1, 1, -1, 1, 1, -1, 1, -1, -1, 1, -1, 1, 1, -1],
}


def test_w16_main_effect_matrix_matches_published(w16):
    A = build_covariate_matrix(w16, main_effects(7))
    assert A.labels == ("1", "x1", "x2", "x3", "x4", "x5", "x6", "x7")
    assert A.n == 16 and A.ncols == 8
    by_label = dict(zip(A.labels, A.columns))
    for label, expected in PUBLISHED_COLUMNS.items():
        assert [int(v) for v in by_label[label]] == expected
    # every column beyond the intercept is the design column itself
    for j in range(7):
        assert [int(v) for v in A.columns[j + 1]] == [run[j] for run in w16.runs]


def test_w16_interaction_column(w16):
    A = build_covariate_matrix(w16, main_effects(7) + [term(7, 1, 2)])
    assert [int(v) for v in A.columns[8]] == [
        1, 1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1, 1, 1, 1, 1,
    ]


def test_confounded_interactions_raise(w16):
    with pytest.raises(EstimabilityError) as exc:
        build_covariate_matrix(
            w16, main_effects(7) + [term(7, 1, 2), term(7, 4, 5)]
        )
    assert exc.value.aliased == ("x4*x5", "x1*x2")


def test_intercept_required(d22):
    with pytest.raises(InputError):
        build_covariate_matrix(d22, [term(2, 1)])


def test_three_level_baseline_columns(three_level_integer):
    A = build_covariate_matrix(
        three_level_integer, main_effects(3), "baseline"
    )
    assert A.ncols == 7
    assert [int(v) for v in A.columns[1]] == [1, 1, 1, 0, 0, 0, 0, 0, 0]
    assert [int(v) for v in A.columns[2]] == [0, 0, 0, 1, 1, 1, 0, 0, 0]


def test_three_level_symmetric_columns(three_level_integer):
    A = build_covariate_matrix(
        three_level_integer, main_effects(3), "symmetric"
    )
    assert [int(v) for v in A.columns[1]] == [2, 2, 2, 0, 0, 0, -1, -1, -1]
    assert [int(v) for v in A.columns[2]] == [0, 0, 0, 2, 2, 2, -1, -1, -1]


def test_three_level_complex_columns(three_level_integer):
    A = build_covariate_matrix(
        three_level_integer, main_effects(3), "complex"
    )
    assert A.ncols == 4
    w = omega(3)
    assert A.columns[1] == tuple(
        w ** run[0] for run in three_level_integer.runs
    )


def test_recode_pm1_column_becomes_binary(d22):
    A = build_covariate_matrix(d22, main_effects(2))
    recoded = recode_integer(A)
    assert recoded[0] == (1, 1, 1, 1)
    # (1 + x)/2 scaling of the plus-minus-one columns
    assert recoded[1] == tuple((1 + run[0]) // 2 for run in d22.runs)
    assert recoded[2] == tuple((1 + run[1]) // 2 for run in d22.runs)


def test_recode_preserves_sufficient_statistic_kernel(three_level_integer):
    # kernels agree across codings: any integer vector with equal recoded
    # statistics has equal exact statistics
    import itertools

    mats = {
        c: build_covariate_matrix(three_level_integer, main_effects(3), c)
        for c in ("baseline", "symmetric", "complex")
    }
    recs = {c: recode_integer(A) for c, A in mats.items()}
    vectors = list(itertools.product((-1, 0, 1), repeat=9))[: 3**8]
    for z in vectors:
        in_kernel = {
            c: all(sum(a * b for a, b in zip(col, z)) == 0 for col in rec)
            for c, rec in recs.items()
        }
        assert len(set(in_kernel.values())) == 1


def test_parse_model_terms():
    terms, contrast = parse_model_terms("1\nx1\nx1*x2\ncontrast=symmetric\n", 3)
    assert terms == [(0, 0, 0), (1, 0, 0), (1, 1, 0)]
    assert contrast == "symmetric"
    with pytest.raises(InputError):
        parse_model_terms("contrast=weird\n", 3)


def test_duplicate_terms_rejected(d22):
    with pytest.raises(InputError):
        build_covariate_matrix(d22, [term(2), term(2, 1), term(2, 1)])
