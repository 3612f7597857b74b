import pytest
from hypothesis import given, settings, strategies as st

from polybern.app.exceptions import BudgetExceededError, DomainError
from polybern.app.services import sequences
from polybern.app.services.chromatic import (
    b_via_chromatic,
    c_via_chromatic,
    chr_bipartite,
    chr_bipartite_monomial,
    chromatic_grid,
    count_colorings_bruteforce,
    d_via_chromatic,
    egf_grid,
)


def test_square_cycle_polynomial():
    # K_{2,2} is the 4-cycle: (q-1)^4 + (q-1)
    poly = chr_bipartite(2, 2)
    assert poly.poly.to_list() == [0, -3, 6, -4, 1]
    assert poly(3) == 18
    assert poly.coefficient(1) == -3
    assert poly.derivative_at(1) == 1


def test_star_and_empty_graphs():
    assert chr_bipartite(0, 3).poly.to_list() == [0, 0, 0, 1]
    assert chr_bipartite(3, 1)(4) == 4 * 3 ** 3
    assert chr_bipartite(0, 0)(5) == 1


@pytest.mark.parametrize("n,k", [(0, 0), (1, 2), (2, 3), (3, 3), (4, 2)])
def test_falling_and_monomial_bases_agree(n, k):
    assert chr_bipartite(n, k).poly == chr_bipartite_monomial(n, k).poly


@pytest.mark.parametrize("n,k,q", [(1, 1, 2), (2, 2, 3), (2, 3, 3), (3, 3, 2), (0, 2, 3), (2, 1, 0)])
def test_polynomial_counts_colorings(n, k, q):
    assert chr_bipartite(n, k)(q) == count_colorings_bruteforce(n, k, q)


def test_bruteforce_budget_and_domain():
    with pytest.raises(BudgetExceededError):
        count_colorings_bruteforce(5, 5, 5, budget=1000)
    with pytest.raises(DomainError):
        count_colorings_bruteforce(1, 1, -1)
    with pytest.raises(DomainError):
        chr_bipartite(-1, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_chromatic_routes_give_b_c_d(n, k):
    assert b_via_chromatic(n, k) == sequences.poly_bernoulli(n, k)
    assert c_via_chromatic(n, k) == sequences.c_relative(n, k)
    assert d_via_chromatic(n, k) == sequences.d_relative(n, k)


@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_egf_grid_matches_polynomials(q):
    assert egf_grid(q, 4, 4) == chromatic_grid(q, 4, 4)


def test_egf_grid_rejects_negative_q():
    with pytest.raises(DomainError):
        egf_grid(-1, 2, 2)
