import pytest
from hypothesis import given, settings, strategies as st

from polybern.app.exceptions import DomainError, UnsupportedMethodError
from polybern.app.services import sequences
from polybern.app.services.sequences import (
    MethodId,
    SequenceId,
    binomial_transform_check,
    c_relative,
    d_relative,
    poly_bernoulli,
    q_recursion,
    vesztergombi_f,
)

B_TABLE = [
    [1, 1, 1, 1, 1, 1],
    [1, 2, 4, 8, 16, 32],
    [1, 4, 14, 46, 146, 454],
    [1, 8, 46, 230, 1066, 4718],
    [1, 16, 146, 1066, 6902, 41506],
    [1, 32, 454, 4718, 41506, 329462],
]

# rows n = 1..5, columns k = 0..4
C_TABLE = [
    [1, 1, 1, 1, 1],
    [1, 3, 7, 15, 31],
    [1, 7, 31, 115, 391],
    [1, 15, 115, 675, 3451],
    [1, 31, 391, 3451, 25231],
]

# rows n = 1..5, columns k = 1..5
D_TABLE = [
    [1, 1, 1, 1, 1],
    [1, 5, 13, 29, 61],
    [1, 13, 73, 301, 1081],
    [1, 29, 301, 2069, 11581],
    [1, 61, 1081, 11581, 95401],
]

LOCAL = [MethodId.CLOSED, MethodId.SIEVE, MethodId.RECURSION, MethodId.EGF]


# ---------------------------------------------------------------------------
#  Known values
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("method", LOCAL)
def test_b_table_every_local_method(method):
    assert sequences.table("B", 5, 5, method).as_ints() == B_TABLE


def test_b44_is_6902():
    assert poly_bernoulli(4, 4) == 6902


@pytest.mark.parametrize("method", LOCAL)
def test_named_values(method):
    assert poly_bernoulli(5, 5, method) == 329462
    assert c_relative(5, 4, method) == 25231
    assert d_relative(5, 5, method) == 95401


@pytest.mark.parametrize("method", LOCAL)
def test_c_table_every_local_method(method):
    got = [[c_relative(n, k, method) for k in range(0, 5)] for n in range(1, 6)]
    assert got == C_TABLE


@pytest.mark.parametrize("method", LOCAL)
def test_d_table_every_local_method(method):
    got = [[d_relative(n, k, method) for k in range(1, 6)] for n in range(1, 6)]
    assert got == D_TABLE


def test_small_c_and_d():
    assert c_relative(2, 1) == 3
    assert d_relative(2, 2) == 5
    assert d_relative(1, 2) == 1


# ---------------------------------------------------------------------------
#  Boundaries
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("method", LOCAL)
def test_boundaries_follow_matrix_counting(method):
    for m in range(6):
        assert poly_bernoulli(m, 0, method) == 1
        assert poly_bernoulli(0, m, method) == 1
        assert c_relative(m, 0, method) == 1
        assert c_relative(0, m, method) == (1 if m == 0 else 0)
        assert d_relative(m, 0, method) == (1 if m == 0 else 0)
        assert d_relative(0, m, method) == (1 if m == 0 else 0)


def test_negative_index_rejected():
    with pytest.raises(DomainError):
        poly_bernoulli(-1, 2)
    with pytest.raises(DomainError):
        sequences.table("C", 2, -1)


def test_unknown_sequence_rejected():
    with pytest.raises(DomainError):
        sequences.value("E", 1, 1)


def test_unknown_method_rejected():
    with pytest.raises(UnsupportedMethodError):
        poly_bernoulli(1, 1, "abacus")


def test_q_recursion_only_for_b():
    assert poly_bernoulli(4, 4, MethodId.Q_RECURSION) == 6902
    with pytest.raises(UnsupportedMethodError):
        c_relative(2, 2, MethodId.Q_RECURSION)


def test_interpretation_methods_need_value():
    with pytest.raises(UnsupportedMethodError):
        poly_bernoulli(2, 2, MethodId.PERMANENT)
    assert sequences.value("B", 2, 2, MethodId.PERMANENT) == 14


# ---------------------------------------------------------------------------
#  Identities
# ---------------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.integers(0, 14), st.integers(0, 14))
def test_b_symmetry(n, k):
    assert poly_bernoulli(n, k) == poly_bernoulli(k, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_c_shift_symmetry(n, k):
    assert c_relative(n + 1, k) == c_relative(k + 1, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_d_symmetry(n, k):
    assert d_relative(n, k) == d_relative(k, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_closed_equals_sieve(n, k):
    for seq in SequenceId:
        assert sequences.value(seq, n, k, "closed") == sequences.value(seq, n, k, "sieve")


@pytest.mark.parametrize("n,k", [(0, 0), (1, 3), (3, 1), (4, 4), (6, 2)])
def test_binomial_transform_relations(n, k):
    report = binomial_transform_check(n, k)
    assert report.passed
    assert report.relations[0].applicable


@pytest.mark.parametrize("n,k,holds", [
    (0, 3, [True, True, True]),
    (4, 0, [True, None, True]),
    (0, 0, [True, None, True]),
])
def test_binomial_transform_relations_on_the_edges(n, k, holds):
    report = binomial_transform_check(n, k)
    assert [r.holds for r in report.relations] == holds
    assert report.passed


@pytest.mark.parametrize("n,k", [(0, 0), (1, 1), (2, 3), (3, 2), (3, 3)])
def test_band_counts_match_f(n, k):
    assert vesztergombi_f(0, n, k) == d_relative(n, k)
    assert vesztergombi_f(2, n, k) == poly_bernoulli(n + 1, k + 1)
    assert vesztergombi_f(1, n, k) == c_relative(n + 1, k)


def test_q_recursion_grows_past_initial_grid():
    assert q_recursion(20, 3) == poly_bernoulli(20, 3)


# ---------------------------------------------------------------------------
#  Tables
# ---------------------------------------------------------------------------

def test_table_to_frame_is_exact():
    frame = sequences.table("B", 5, 5).to_frame()
    assert frame.index.name == "n"
    assert frame.loc[5, 5] == 329462
    assert isinstance(frame.loc[5, 5], int)


def test_egf_table_matches_closed_beyond_default_order():
    egf = sequences.egf_table("D", 9, 9).as_ints()
    assert egf[9][9] == d_relative(9, 9)
