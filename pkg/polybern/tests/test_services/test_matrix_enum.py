import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polybern.app.exceptions import BudgetExceededError, DomainError, PreconditionError
from polybern.app.models.binary_matrix import BinaryMatrix
from polybern.app.services import sequences
from polybern.app.services.matrix_enum import (
    PRESETS,
    PatternSet,
    Restriction,
    avoids,
    contains_pattern,
    count_avoiding,
    count_avoiding_naive,
    is_lonesum_reconstruction,
    iter_all_matrices,
    iter_avoiding,
    lonesum_compose,
    lonesum_decompose,
    pattern_set,
)

RESTRICTED = {
    "B": Restriction.NONE,
    "C": Restriction.COLS_NONZERO,
    "D": Restriction.ROWS_AND_COLS_NONZERO,
}


def _matrices(max_n=3, max_k=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.integers(1, max_k).flatmap(
            lambda k: st.lists(st.integers(0, (1 << k) - 1), min_size=n, max_size=n).map(
                lambda rows: BinaryMatrix(n, k, tuple(rows)))))


# ---------------------------------------------------------------------------
#  Containment
# ---------------------------------------------------------------------------

def test_identity_contains_l_pattern():
    assert contains_pattern(BinaryMatrix.identity(3), PRESETS["L"].patterns[0])
    assert not avoids(BinaryMatrix.identity(2), "L")


def test_staircase_is_lonesum():
    m = BinaryMatrix.from_strings(["111", "110", "100"])
    assert avoids(m, "lonesum")


def test_pattern_larger_than_matrix_is_absent():
    assert not contains_pattern(BinaryMatrix.ones(1, 3), BinaryMatrix.ones(2, 2))


def test_unknown_pattern_set():
    with pytest.raises(DomainError):
        pattern_set("Z")


def test_empty_pattern_set_rejected():
    with pytest.raises(PreconditionError):
        PatternSet.custom([])


def test_contains_pattern_matches_submatrix_scan():
    p = BinaryMatrix.from_strings(["10", "01"])
    for m in iter_all_matrices(3, 3):
        brute = any(
            m.submatrix(r, c) == p
            for r in itertools.combinations(range(3), 2)
            for c in itertools.combinations(range(3), 2)
        )
        assert contains_pattern(m, p) == brute


# ---------------------------------------------------------------------------
#  Counting
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("preset", ["L", "Gamma", "P", "Q"])
@pytest.mark.parametrize("seq", ["B", "C", "D"])
def test_pruned_count_matches_naive(preset, seq):
    for n, k in itertools.product(range(4), repeat=2):
        assert count_avoiding(n, k, preset, RESTRICTED[seq]) == count_avoiding_naive(
            n, k, preset, RESTRICTED[seq])


@pytest.mark.parametrize("preset", ["L", "Gamma", "P", "Q"])
def test_every_preset_counts_b(preset):
    for n, k in itertools.product(range(5), repeat=2):
        assert count_avoiding(n, k, preset) == sequences.poly_bernoulli(n, k)


def test_lonesum_restrictions_count_c_and_d():
    assert count_avoiding(4, 4, "L", Restriction.COLS_NONZERO) == sequences.c_relative(4, 4)
    assert count_avoiding(4, 3, "L", Restriction.ROWS_AND_COLS_NONZERO) == sequences.d_relative(4, 3)


def test_empty_shapes():
    assert count_avoiding(0, 0, "L") == 1
    assert count_avoiding(0, 3, "L", Restriction.COLS_NONZERO) == 0
    assert count_avoiding(2, 0, "L", Restriction.ROWS_AND_COLS_NONZERO) == 0


def test_parallel_count_is_identical():
    assert count_avoiding(4, 4, "L", jobs=2) == count_avoiding(4, 4, "L") == 6902


def test_iter_avoiding_matches_count():
    found = list(iter_avoiding(3, 3, "L", Restriction.COLS_NONZERO))
    assert len(found) == len(set(found)) == sequences.c_relative(3, 3)
    assert all(avoids(m, "L") and not m.has_zero_column() for m in found)


def test_search_budget_aborts():
    with pytest.raises(BudgetExceededError):
        count_avoiding(6, 6, "L", budget=100)


def test_naive_scan_refuses_large_shapes():
    with pytest.raises(BudgetExceededError):
        count_avoiding_naive(6, 6, "L", budget=2 ** 10)


def test_custom_three_row_pattern_uses_general_search():
    column = PatternSet.custom([BinaryMatrix.from_strings(["1", "1", "1"])])
    # every column has at most two ones
    assert count_avoiding(3, 2, column) == 7 ** 2
    assert count_avoiding(3, 2, column) == count_avoiding_naive(3, 2, column)


# ---------------------------------------------------------------------------
#  Lonesum structure
# ---------------------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(_matrices())
def test_lonesum_iff_reconstructible(m):
    assert avoids(m, "L") == is_lonesum_reconstruction(m, "bruteforce")
    assert avoids(m, "L") == is_lonesum_reconstruction(m, "staircase")


@settings(max_examples=200, deadline=None)
@given(_matrices(4, 4))
def test_decompose_compose_round_trip(m):
    if not avoids(m, "L"):
        with pytest.raises(PreconditionError):
            lonesum_decompose(m)
        return
    assert lonesum_compose(lonesum_decompose(m)) == m


def test_decomposition_classes():
    m = BinaryMatrix.from_strings(["011", "000", "111"])
    d = lonesum_decompose(m)
    assert d.zero_rows == (1,)
    assert d.zero_cols == ()
    assert d.ordinary_classes == 2
    assert d.row_classes == ((0,), (2,))


def test_unknown_reconstruction_method():
    with pytest.raises(ValueError):
        is_lonesum_reconstruction(BinaryMatrix.ones(2, 2), "guess")


# ---------------------------------------------------------------------------
#  BinaryMatrix
# ---------------------------------------------------------------------------

def test_binary_matrix_numpy_and_strings():
    m = BinaryMatrix.from_strings(["10", "11"])
    assert BinaryMatrix.from_numpy(m.to_numpy()) == m
    assert np.array_equal(m.to_numpy(), np.array([[1, 0], [1, 1]]))
    assert m.transpose().to_strings() == ["11", "01"]
    assert m.row_sums() == [1, 2]
    assert m.col_sums() == [2, 1]


def test_binary_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        BinaryMatrix.from_lists([[0, 2]])
    with pytest.raises(ValueError):
        BinaryMatrix(1, 2, (4,))
