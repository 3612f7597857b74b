from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import bernoulli as sympy_bernoulli

from polybern.app.exceptions import DomainError, PreconditionError
from polybern.app.services import sequences
from polybern.app.services.transforms import (
    TriangleRow,
    at_closed,
    at_run,
    at_step,
    bernoulli_numbers,
    bernoulli_seed,
    bt_closed,
    bt_run,
    bt_step,
    parse_seed,
    pb_via_transforms,
    power_seed,
    transform_table,
    triangle,
)


def test_at_step_on_bernoulli_seed():
    row = at_step(TriangleRow.seed(bernoulli_seed(3)))
    assert row.entries == (Fraction(1, 2), Fraction(1, 3))
    assert row.generation == 1


def test_bt_step_rule():
    row = bt_step(TriangleRow.seed([1, 2, 3]))
    # i·a_i - (i+1)·a_{i+1}
    assert row.entries == (Fraction(-2), Fraction(-4))


def test_step_needs_two_entries():
    with pytest.raises(PreconditionError):
        at_step(TriangleRow.seed([1]))


def test_akiyama_tanigawa_gives_bernoulli_numbers():
    seed = bernoulli_seed(12)
    b = bernoulli_numbers(12)
    for n in range(2, 12):
        # B_1 = -1/2 while the triangle lands on +1/2
        assert at_run(seed, n) == b[n]
    assert at_run(seed, 1) == -b[1]


def test_bernoulli_numbers_agree_with_sympy():
    b = bernoulli_numbers(16)
    for n in range(2, 16):
        assert b[n] == Fraction(str(sympy_bernoulli(n)))
    assert b[1] == Fraction(-1, 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(), min_size=1, max_size=9))
def test_closed_forms_match_iteration(seed):
    n = len(seed) - 1
    assert at_closed(seed, n) == at_run(seed, n)
    assert bt_closed(seed, n) == bt_run(seed, n)


def test_bt_two_steps():
    seed = [Fraction(0), Fraction(5), Fraction(7)]
    assert bt_run(seed, 2) == -seed[1] + 2 * seed[2]


def test_triangle_rows_shrink():
    rows = triangle(power_seed(2, 4), 3, "bt")
    assert [len(r) for r in rows] == [4, 3, 2, 1]


def test_short_seed_rejected():
    with pytest.raises(PreconditionError):
        at_run([1, 2], 3)
    with pytest.raises(DomainError):
        at_run([1, 2], -1)


def test_power_seed_zero_to_the_zero():
    assert power_seed(0, 3) == [1, 1, 1]
    assert power_seed(2, 3, shift=1) == [1, 4, 9]


@pytest.mark.parametrize("text,expected", [
    ("bernoulli", [1, Fraction(1, 2), Fraction(1, 3)]),
    ("pow:2", [0, 1, 4]),
    ("PowPlus:1", [1, 2, 3]),
])
def test_parse_seed(text, expected):
    assert parse_seed(text, 3) == expected


@pytest.mark.parametrize("text", ["pow", "bernoulli:2", "cubes", "pow:-1"])
def test_parse_seed_rejects(text):
    with pytest.raises(DomainError):
        parse_seed(text, 3)


@pytest.mark.parametrize("seq", ["B", "C", "D"])
def test_transform_table_matches_closed(seq):
    assert transform_table(seq, 8, 8).as_ints() == sequences.table(seq, 8, 8).as_ints()


def test_pb_via_transforms_named_values():
    assert pb_via_transforms("B", 5, 5) == 329462
    assert pb_via_transforms("C", 5, 4) == 25231
    assert pb_via_transforms("D", 5, 5) == 95401
    assert pb_via_transforms("C", 0, 3) == 0
