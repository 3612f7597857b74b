"""Chromatic polynomials of complete bipartite graphs K_{n,k}.

Two expansions are provided and must agree:

    chr_{K_{n,k}}(q) = Σ_{i,j} S(n,i) S(k,j) (q)_{i+j}                (falling basis)
                     = Σ_{i,j} S(n,i) S(k,j) Σ_m s(i+j,m) q^m         (monomial basis)

B, C and D follow from evaluation at -1, the linear coefficient and the
derivative at 1 of suitably enlarged graphs.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass

import numpy as np

from ..config import load_settings
from ..exceptions import BudgetExceededError, DomainError
from .exact_core import BivariateSeries, IntPolynomial, falling_factorial_poly, stirling1_signed, stirling2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChromaticPoly:
    n: int
    k: int
    poly: IntPolynomial

    def __call__(self, q: int) -> int:
        return self.poly(q)

    def coefficient(self, d: int) -> int:
        return self.poly.coefficient(d)

    def derivative_at(self, q: int) -> int:
        return self.poly.derivative()(q)

    def __str__(self) -> str:
        return str(self.poly)


def _check(n: int, k: int) -> None:
    if n < 0 or k < 0:
        raise DomainError(f"graph sides must be non-negative, got ({n}, {k})")


@functools.lru_cache(maxsize=256)
def chr_bipartite(n: int, k: int) -> ChromaticPoly:
    """chr_{K_{n,k}} through the falling-factorial expansion."""
    _check(n, k)
    poly = IntPolynomial.constant(0)
    for i in range(n + 1):
        s_n = stirling2(n, i)
        if s_n == 0:
            continue
        for j in range(k + 1):
            s_k = stirling2(k, j)
            if s_k:
                poly = poly + falling_factorial_poly(i + j) * (s_n * s_k)
    return ChromaticPoly(n, k, poly)


def chr_bipartite_monomial(n: int, k: int) -> ChromaticPoly:
    """chr_{K_{n,k}} with each (q)_l expanded through signed Stirling numbers of the first kind."""
    _check(n, k)
    coeffs = [0] * (n + k + 1)
    for i in range(n + 1):
        for j in range(k + 1):
            weight = stirling2(n, i) * stirling2(k, j)
            if weight == 0:
                continue
            for m in range(i + j + 1):
                coeffs[m] += weight * stirling1_signed(i + j, m)
    return ChromaticPoly(n, k, IntPolynomial(coeffs))


def count_colorings_bruteforce(n: int, k: int, q: int, *, budget: int | None = None) -> int:
    """Proper q-colorings of K_{n,k} by scanning every assignment."""
    _check(n, k)
    if q < 0:
        raise DomainError(f"number of colors must be non-negative, got {q}")
    limit = load_settings().coloring_budget if budget is None else budget
    total = q ** (n + k)
    if total > limit:
        logger.warning("brute-force coloring of K_%d,%d with %d colors refused (budget %d)", n, k, q, limit)
        raise BudgetExceededError("brute-force coloring", limit, total)
    if n + k == 0:
        return 1
    if q == 0:
        return 0
    # one column per assignment, one row per vertex
    colors = np.indices((q,) * (n + k)).reshape(n + k, -1)
    left, right = colors[:n], colors[n:]
    clash = (left[:, None, :] == right[None, :, :]).any(axis=(0, 1))
    return int(np.count_nonzero(~clash))


def b_via_chromatic(n: int, k: int) -> int:
    """B(n,k) = (-1)^{n+k} chr_{K_{n,k}}(-1)."""
    return (-1) ** (n + k) * chr_bipartite(n, k)(-1)


def c_via_chromatic(n: int, k: int) -> int:
    """C(n,k) = (-1)^{n+k} [q] chr_{K_{n,k+1}}(q)."""
    return (-1) ** (n + k) * chr_bipartite(n, k + 1).coefficient(1)


def d_via_chromatic(n: int, k: int) -> int:
    """D(n,k) = (-1)^{n+k} chr'_{K_{n+1,k+1}}(1)."""
    return (-1) ** (n + k) * chr_bipartite(n + 1, k + 1).derivative_at(1)


def chromatic_grid(q: int, nmax: int, kmax: int) -> list[list[int]]:
    """chr_{K_{n,k}}(q) for 0 ≤ n ≤ nmax, 0 ≤ k ≤ kmax."""
    return [[chr_bipartite(n, k)(q) for k in range(kmax + 1)] for n in range(nmax + 1)]


def egf_grid(q: int, nmax: int, kmax: int) -> list[list[int]]:
    """n!k! [x^n y^k] (e^x + e^y - 1)^q, which is chr_{K_{n,k}}(q)."""
    if q < 0:
        raise DomainError(f"q must be non-negative, got {q}")
    base = (BivariateSeries.exp_x(nmax, kmax) + BivariateSeries.exp_y(nmax, kmax)) - 1
    power = base ** q
    out = []
    for n in range(nmax + 1):
        row = []
        for k in range(kmax + 1):
            value = power.egf_coefficient(n, k)
            if value.denominator != 1:
                raise ArithmeticError(f"non-integral coefficient {value} at ({n}, {k})")
            row.append(value.numerator)
        out.append(row)
    return out
