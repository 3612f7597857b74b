import pytest

from polybern.app.exceptions import BudgetExceededError, DomainError, PreconditionError
from polybern.app.models.binary_matrix import BinaryMatrix
from polybern.app.models.tagged_permutation import TaggedPermutation
from polybern.app.services import matrix_enum, perm_enum, sequences
from polybern.app.services.bijections import (
    OrientedBipartite,
    SplitResult,
    callan_ll_merge,
    callan_ll_split,
    callan_phi,
    callan_psi,
    callan_swap,
    count_orientations,
    matrix_of,
    orientation_is_acyclic,
    orientation_of,
    run_suite,
    zigzag_to_permutation,
)


# ---------------------------------------------------------------------------
#  Orientations
# ---------------------------------------------------------------------------

def test_identity_orientation_has_a_cycle():
    # u1 -> v2 -> u2 -> v1 -> u1
    assert not orientation_is_acyclic(orientation_of(BinaryMatrix.identity(2)))
    assert orientation_is_acyclic(orientation_of(BinaryMatrix.from_strings(["11", "10"])))


def test_orientation_matrix_round_trip():
    m = BinaryMatrix.from_strings(["101", "001"])
    assert matrix_of(orientation_of(m)) == m


def test_sinks_and_sources():
    o = orientation_of(BinaryMatrix.from_strings(["11", "00"]))
    # row of ones: both edges point into u1
    assert o.sinks() == {("u", 1)}
    assert o.sources() == {("u", 2)}
    assert sorted(o.edges())[0] == (("u", 2), ("v", 1))


def test_orientation_shape_mismatch():
    with pytest.raises(PreconditionError):
        OrientedBipartite(2, 2, BinaryMatrix.ones(2, 3))


@pytest.mark.parametrize("variant,seq", [("all", "B"), ("unique_sink", "C"), ("unique_source_sink", "D")])
def test_orientation_counts(variant, seq):
    for n in range(4):
        for k in range(4):
            assert count_orientations(n, k, variant) == sequences.value(seq, n, k)


def test_orientation_count_refuses_large_graphs():
    with pytest.raises(BudgetExceededError):
        count_orientations(4, 5)
    with pytest.raises(DomainError):
        count_orientations(1, 1, "two_sinks")


def test_acyclic_orientations_are_lonesum_matrices():
    for m in matrix_enum.iter_all_matrices(3, 3):
        assert orientation_is_acyclic(orientation_of(m)) == matrix_enum.avoids(m, "L")


# ---------------------------------------------------------------------------
#  Callan maps
# ---------------------------------------------------------------------------

def test_phi_moves_the_following_right_block():
    p = TaggedPermutation.parse("1' 2 2' 3' 1")
    q = callan_phi(p)
    assert str(q) == "1' 4' 1 2' 3'"
    assert (q.n, q.k) == (1, 4)
    assert callan_psi(q) == p


def test_phi_when_largest_left_value_is_last():
    p = TaggedPermutation.parse("1' 1 2")
    q = callan_phi(p)
    assert str(q) == "1' 1 2'"
    assert callan_psi(q) == p


def test_phi_rejects_wrong_boundary():
    with pytest.raises(PreconditionError):
        callan_phi(TaggedPermutation.parse("1 1'"))
    with pytest.raises(PreconditionError):
        callan_psi(TaggedPermutation.parse("1' 1"))


def test_phi_is_a_bijection_onto_star_r():
    for n, k in [(1, 2), (2, 2), (3, 1), (2, 3)]:
        domain = list(perm_enum.iter_callan(n, k, "*,l"))
        images = {callan_phi(p) for p in domain}
        assert len(images) == len(domain)
        assert images == set(perm_enum.iter_callan(n - 1, k + 1, "*,r"))


def test_swap_is_an_involution():
    p = TaggedPermutation.parse("2 1' 1 3 2'")
    assert callan_swap(callan_swap(p)) == p
    assert str(callan_swap(p)) == "2' 1 1' 3' 2"


def test_ll_split_branches():
    first = callan_ll_split(TaggedPermutation.parse("2 1' 1"))
    assert first == SplitResult("rl", TaggedPermutation.parse("1' 1"))
    second = callan_ll_split(TaggedPermutation.parse("1 1' 2"))
    assert second.branch == "lr"
    assert callan_ll_merge(first) == TaggedPermutation.parse("2 1' 1")
    assert callan_ll_merge(second) == TaggedPermutation.parse("1 1' 2")


def test_ll_split_counts():
    for n, k in [(2, 1), (3, 2), (3, 3)]:
        total = perm_enum.count_callan(n, k, "l,l")
        assert total == perm_enum.count_callan(n - 1, k + 1, "l,r") + perm_enum.count_callan(n - 1, k, "r,l")


def test_ll_merge_rejects_wrong_class():
    with pytest.raises(PreconditionError):
        callan_ll_merge(SplitResult("rl", TaggedPermutation.parse("1 1'")))
    with pytest.raises(PreconditionError):
        callan_ll_merge(SplitResult("lr", TaggedPermutation.parse("1' 1")))


# ---------------------------------------------------------------------------
#  Zig-zag paths
# ---------------------------------------------------------------------------

def test_zigzag_on_zero_matrix_is_identity():
    assert zigzag_to_permutation(BinaryMatrix.zeros(2, 3)) == (1, 2, 3, 4, 5)


def test_zigzag_images_form_the_excedance_classes():
    for n, k in [(1, 1), (2, 2), (2, 3), (3, 2)]:
        images = [zigzag_to_permutation(m) for m in matrix_enum.iter_avoiding(n, k, "P")]
        assert len(set(images)) == len(images)
        assert set(images) == set(perm_enum.iter_excedance_class(n, k, "E"))


def test_zigzag_requires_p_free_input():
    with pytest.raises(PreconditionError):
        zigzag_to_permutation(BinaryMatrix.from_strings(["01", "10"]))


# ---------------------------------------------------------------------------
#  Suite
# ---------------------------------------------------------------------------

def test_run_suite_small():
    report = run_suite(max_size=5, matrix_size=2, max_cells=6)
    assert report.passed, report.to_dict()
    names = [c.name for c in report.checks]
    assert names == ["phi_psi_round_trip", "swap_involution_and_symmetry", "ll_split_cover",
                     "zigzag_bijection", "orientation_lonesum_coding"]
    assert all(c.cases > 0 for c in report.checks)
