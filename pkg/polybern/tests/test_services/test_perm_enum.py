import itertools

import pytest
from hypothesis import given, settings, strategies as st

from polybern.app.exceptions import BudgetExceededError, DomainError, PreconditionError
from polybern.app.models.binary_matrix import BinaryMatrix
from polybern.app.models.tagged_permutation import Side, Symbol, TaggedPermutation
from polybern.app.services import sequences
from polybern.app.services.perm_enum import (
    BOUNDARY_PRESETS,
    BandSpec,
    BoundaryClass,
    End,
    ExcedanceVariant,
    band_matrix,
    count_band,
    count_callan,
    count_excedance_class,
    excedance_matrix,
    excedance_set,
    excedance_variant,
    fixed_points,
    in_excedance_class,
    is_callan,
    is_permutation,
    iter_band,
    iter_callan,
    iter_excedance_class,
    permanent_ryser,
    reverse_blocks,
    weak_excedance_set,
)

SHAPES = [(n, k) for n in range(5) for k in range(5) if n + k <= 7]
# the largest size the verification grid enumerates
EDGE_SHAPES = [(n, 8 - n) for n in range(9)]


# ---------------------------------------------------------------------------
#  Basic statistics
# ---------------------------------------------------------------------------

def test_excedance_statistics():
    p = (3, 2, 1, 4)
    assert excedance_set(p) == {1}
    assert weak_excedance_set(p) == {1, 2, 4}
    assert fixed_points(p) == {2, 4}
    assert is_permutation(p)
    assert not is_permutation((1, 1, 2))


# ---------------------------------------------------------------------------
#  Band windows
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("preset,seq", [("V", "B"), ("V*", "C"), ("V**", "D")])
def test_band_presets_count_b_c_d(preset, seq):
    for n, k in SHAPES:
        spec = BandSpec.preset(preset, n, k)
        assert count_band(spec) == sequences.value(seq, n, k)


@pytest.mark.parametrize("preset", ["V", "Vstar", "Vstarstar"])
def test_band_permanent_equals_count(preset):
    for n, k in SHAPES:
        spec = BandSpec.preset(preset, n, k)
        assert permanent_ryser(band_matrix(spec)) == count_band(spec)


def test_band_listing_is_lexicographic_and_admissible():
    spec = BandSpec.preset("V", 2, 2)
    perms = list(iter_band(spec))
    assert perms == sorted(perms)
    assert len(perms) == 14
    assert all(spec.admits(v - i) for p in perms for i, v in enumerate(p, start=1))


@pytest.mark.parametrize("r", [0, 1, 2])
def test_f_window_counts_the_printed_sum(r):
    for n, k in itertools.product(range(4), repeat=2):
        if n + k > 6:
            continue
        assert count_band(BandSpec.f_window(r, n, k)) == sequences.vesztergombi_f(r, n, k)


def test_band_describe_and_bad_preset():
    assert BandSpec.preset("V*", 2, 3).describe() == "-3 <= pi(i)-i < 2 on [5]"
    with pytest.raises(DomainError):
        BandSpec.preset("W", 1, 1)
    with pytest.raises(DomainError):
        BandSpec(-1, 2)


def test_band_budget():
    with pytest.raises(BudgetExceededError):
        count_band(BandSpec.preset("V", 6, 6), budget=8)


# ---------------------------------------------------------------------------
#  Permanent
# ---------------------------------------------------------------------------

def test_permanent_of_all_ones_is_factorial():
    assert permanent_ryser(BinaryMatrix.ones(6, 6)) == 720


def test_permanent_of_identity_and_empty():
    assert permanent_ryser(BinaryMatrix.identity(5)) == 1
    assert permanent_ryser(BinaryMatrix.zeros(0, 0)) == 1
    assert permanent_ryser(BinaryMatrix.zeros(3, 3)) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n).map(
        lambda rows: BinaryMatrix(n, n, tuple(rows)))))
def test_permanent_matches_definition(m):
    n = m.n_rows
    direct = sum(all(m.entry(i, p[i]) for i in range(n)) for p in itertools.permutations(range(n)))
    assert permanent_ryser(m) == direct


def test_permanent_rejects_rectangles_and_large_inputs():
    with pytest.raises(PreconditionError):
        permanent_ryser(BinaryMatrix.ones(2, 3))
    with pytest.raises(BudgetExceededError):
        permanent_ryser(BinaryMatrix.ones(4, 4), max_size=3)


# ---------------------------------------------------------------------------
#  Excedance classes
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("variant,entry", [
    ("E", lambda n, k: sequences.poly_bernoulli(n, k)),
    ("Estar", lambda n, k: sequences.c_relative(n, k)),
    ("Estarstar", lambda n, k: sequences.d_relative(n, k)),
    ("WE_exact", lambda n, k: sequences.c_relative(k, n)),
])
def test_excedance_classes_count(variant, entry):
    for n, k in SHAPES:
        assert count_excedance_class(n, k, variant) == entry(n, k)


@pytest.mark.parametrize("variant", list(ExcedanceVariant))
def test_excedance_listing_agrees_with_set_definition(variant):
    n, k = 3, 2
    listed = set(iter_excedance_class(n, k, variant))
    direct = {p for p in itertools.permutations(range(1, n + k + 1)) if in_excedance_class(p, k, variant)}
    assert listed == direct


def test_excedance_matrix_permanent():
    assert permanent_ryser(excedance_matrix(3, 3, "E**")) == sequences.d_relative(3, 3)


def test_excedance_variant_aliases():
    assert excedance_variant("E*") is ExcedanceVariant.ESTAR
    assert excedance_variant("E**") is ExcedanceVariant.ESTARSTAR
    with pytest.raises(DomainError):
        excedance_variant("F")


# ---------------------------------------------------------------------------
#  Callan permutations
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("preset,seq", [("B", "B"), ("C", "C"), ("D", "D")])
def test_callan_presets_count_b_c_d(preset, seq):
    for n, k in SHAPES:
        assert count_callan(n, k, BOUNDARY_PRESETS[preset]) == sequences.value(seq, n, k)


@pytest.mark.parametrize("boundary", ["*,*", "*,l", "l,r", "l,l", "r,l", "r,*"])
def test_callan_count_matches_listing(boundary):
    for n, k in SHAPES:
        listed = list(iter_callan(n, k, boundary))
        assert len(listed) == count_callan(n, k, boundary)
        assert all(is_callan(p) for p in listed)


def test_callan_listing_small():
    assert [str(p) for p in iter_callan(1, 1)] == ["1 1'", "1' 1"]
    assert count_callan(3, 2, "l,l") == 18


def test_empty_callan_permutation_is_in_every_class():
    for boundary in ["l,l", "r,r", "l,r"]:
        assert count_callan(0, 0, boundary) == 1
        assert len(list(iter_callan(0, 0, boundary))) == 1


def test_boundary_class_parse():
    assert BoundaryClass.parse("*, left") == BoundaryClass(End.ANY, End.LEFT)
    assert str(BoundaryClass.parse("r,any")) == "r,*"
    with pytest.raises(DomainError):
        BoundaryClass.parse("l")


def test_is_callan_requires_increasing_blocks():
    assert is_callan(TaggedPermutation.parse("1 2 1' 2' 3"))
    assert not is_callan(TaggedPermutation.parse("2 1 1'"))


def test_reverse_blocks():
    p = TaggedPermutation.parse("1 3 2' 2 1'")
    assert str(reverse_blocks(p)) == "1' 2 2' 1 3"


def test_callan_budget():
    with pytest.raises(BudgetExceededError):
        count_callan(6, 6, budget=10)


# ---------------------------------------------------------------------------
#  TaggedPermutation
# ---------------------------------------------------------------------------

def test_tagged_permutation_parse_and_blocks():
    p = TaggedPermutation.parse("2 1' 1 3")
    assert (p.n, p.k) == (3, 1)
    assert p.first_side is Side.LEFT
    assert p.last_side is Side.LEFT
    assert p.blocks() == [(Symbol.left(2),), (Symbol.right(1),), (Symbol.left(1), Symbol.left(3))]
    with pytest.raises(ValueError):
        TaggedPermutation(2, 1, (Symbol.left(1), Symbol.left(1), Symbol.right(1)))


# ---------------------------------------------------------------------------
#  Largest enumerated size
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n,k", EDGE_SHAPES)
@pytest.mark.parametrize("seq,band,excedance,boundary", [
    ("B", "V", "E", "B"),
    ("C", "V*", "Estar", "C"),
    ("D", "V**", "Estarstar", "D"),
])
def test_every_permutation_family_at_size_eight(n, k, seq, band, excedance, boundary):
    expected = sequences.value(seq, n, k)
    spec = BandSpec.preset(band, n, k)
    assert count_band(spec) == expected
    assert permanent_ryser(band_matrix(spec)) == expected
    assert count_excedance_class(n, k, excedance) == expected
    assert permanent_ryser(excedance_matrix(n, k, excedance)) == expected
    assert count_callan(n, k, BOUNDARY_PRESETS[boundary]) == expected
