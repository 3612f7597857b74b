"""Poly-Bernoulli numbers B(n, k) and the relatives C(n, k), D(n, k).

B(n, k) counts lonesum n×k matrices, C(n, k) those without an all-zero
column and D(n, k) those with neither an all-zero row nor column.  Every
route in this module returns the same exact integer:

``closed``       Σ (m!)^2 S(n+1,m+1) S(k+1,m+1) and its C/D analogues
``sieve``        the inclusion-exclusion sums
``recursion``    bottom-up memo tables of the row recursions
``egf``          Taylor coefficients of the double exponential generating functions
``q_recursion``  the recursion of the Q-free matrix count (B only)
``permanent``    Ryser permanent of the band matrices (via :mod:`perm_enum`)
``chromatic``    chromatic polynomial identities (via :mod:`chromatic`)
``enumeration``  exhaustive lonesum matrix search (via :mod:`matrix_enum`)
"""

from __future__ import annotations

import functools
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

import pandas as pd

from ..exceptions import DomainError, UnsupportedMethodError
from . import chromatic, matrix_enum, perm_enum
from .exact_core import BivariateSeries, binomial, factorial, ratio_to_str, stirling2

logger = logging.getLogger(__name__)


class SequenceId(str, Enum):
    B = "B"
    C = "C"
    D = "D"


class MethodId(str, Enum):
    CLOSED = "closed"
    SIEVE = "sieve"
    RECURSION = "recursion"
    EGF = "egf"
    Q_RECURSION = "q_recursion"
    PERMANENT = "permanent"
    CHROMATIC = "chromatic"
    ENUMERATION = "enumeration"


LOCAL_METHODS = (MethodId.CLOSED, MethodId.SIEVE, MethodId.RECURSION, MethodId.EGF)
INTERPRETATION_METHODS = (MethodId.PERMANENT, MethodId.CHROMATIC, MethodId.ENUMERATION)


def sequence_id(seq: SequenceId | str) -> SequenceId:
    if isinstance(seq, SequenceId):
        return seq
    try:
        return SequenceId(str(seq).strip().upper())
    except ValueError as exc:
        raise DomainError(f"unknown sequence {seq!r}; expected B, C or D") from exc


def method_id(method: MethodId | str) -> MethodId:
    try:
        return MethodId(method)
    except ValueError as exc:
        known = ", ".join(m.value for m in MethodId)
        raise UnsupportedMethodError("any sequence", str(method), f"unknown method; expected one of {known}") from exc


@dataclass(frozen=True)
class DomainConvention:
    """Index ranges and boundary values for B, C and D.

    The n = 0 / k = 0 edges follow the matrix-counting semantics: an empty
    matrix counts once unless a per-row or per-column restriction cannot be
    met.
    """

    def validate(self, n: int, k: int) -> None:
        if n < 0 or k < 0:
            raise DomainError(f"indices must be non-negative, got ({n}, {k})")

    def boundary(self, seq: SequenceId, n: int, k: int) -> int | None:
        """Boundary value at (n, k), or None for interior points."""
        if n > 0 and k > 0:
            return None
        if seq is SequenceId.B:
            return 1
        if seq is SequenceId.C:
            if n == 0:
                return 1 if k == 0 else 0
            return 1
        return 1 if n == k == 0 else 0


DOMAIN = DomainConvention()


# ---------------------------------------------------------------------------
#  Closed and sieve formulas
# ---------------------------------------------------------------------------

def _b_closed(n: int, k: int) -> int:
    return sum(factorial(m) ** 2 * stirling2(n + 1, m + 1) * stirling2(k + 1, m + 1)
               for m in range(min(n, k) + 1))


def _b_sieve(n: int, k: int) -> int:
    # (-1)^n kept outside the sum, exactly as the formula is usually printed
    inner = sum((-1) ** m * factorial(m) * stirling2(n, m) * (m + 1) ** k for m in range(n + 1))
    return (-1) ** n * inner


def _c_closed(n: int, k: int) -> int:
    return sum(factorial(m) ** 2 * stirling2(n + 1, m + 1) * stirling2(k, m)
               for m in range(min(n, k) + 1))


def _c_sieve(n: int, k: int) -> int:
    return sum((-1) ** (n + m) * factorial(m) * (m + 1) ** k * stirling2(n + 1, m + 1)
               for m in range(n + 1))


def _d_closed(n: int, k: int) -> int:
    return sum(factorial(m) ** 2 * stirling2(n, m) * stirling2(k, m) for m in range(min(n, k) + 1))


def _d_sieve(n: int, k: int) -> int:
    return sum((-1) ** (n + m) * factorial(m) * m ** k * stirling2(n + 1, m + 1)
               for m in range(n + 1))


def vesztergombi_f(r: int, n: int, k: int) -> int:
    """Σ_m (-1)^(n+m) (m+r)! (m+r)^k S(n+1, m+1).

    Counts permutations of [n+k+r] with -(k+r) < π(i) - i < n+r, so
    f(0,n,k) = D(n,k), f(1,n,k) = C(n+1,k) and f(2,n,k) = B(n+1,k+1).
    """
    if min(r, n, k) < 0:
        raise DomainError("f(r, n, k) needs r, n, k >= 0")
    return sum((-1) ** (n + m) * factorial(m + r) * (m + r) ** k * stirling2(n + 1, m + 1)
               for m in range(n + 1))


# ---------------------------------------------------------------------------
#  Recursion tables
# ---------------------------------------------------------------------------

def _b_grid(nmax: int, kmax: int) -> list[list[int]]:
    grid = [[1] + [0] * kmax for _ in range(nmax + 1)]
    for k in range(kmax):
        for n in range(nmax + 1):
            grid[n][k + 1] = grid[n][k] + sum(
                binomial(n, m) * grid[n - m + 1][k] for m in range(1, n + 1))
    return grid


def _c_grid(nmax: int, kmax: int) -> list[list[int]]:
    grid = [[1] + [0] * kmax for _ in range(nmax + 1)]
    for k in range(kmax):
        for n in range(1, nmax + 1):
            grid[n][k + 1] = sum(binomial(n, m) * grid[n - m + 1][k] for m in range(1, n + 1))
    return grid


def _d_grid(nmax: int, kmax: int) -> list[list[int]]:
    grid = [[1 if n == 0 else 0] + [0] * kmax for n in range(nmax + 1)]
    for k in range(kmax):
        for n in range(1, nmax + 1):
            grid[n][k + 1] = sum(
                binomial(n, m) * (grid[n - m][k] + grid[n - m + 1][k]) for m in range(1, n + 1))
    return grid


def _q_grid(nmax: int, kmax: int) -> list[list[int]]:
    grid = [[1] + [0] * kmax for _ in range(nmax + 1)]
    for k in range(1, kmax + 1):
        for n in range(nmax + 1):
            grid[n][k] = (n + 1) * grid[n][k - 1] + sum(
                binomial(n, m) * grid[n - m + 1][k - 1] for m in range(2, n + 1))
    return grid


class RecursionTable:
    """Memo grid filled bottom-up by *builder*, regrown geometrically."""

    def __init__(self, name: str, builder: Callable[[int, int], list[list[int]]], size: int = 16):
        self.name = name
        self._builder = builder
        self._lock = threading.Lock()
        self._grid = builder(size, size)

    def __call__(self, n: int, k: int) -> int:
        grid = self._grid
        if n >= len(grid) or k >= len(grid[0]):
            with self._lock:
                grid = self._grid
                if n >= len(grid) or k >= len(grid[0]):
                    nmax = max(n, 2 * (len(grid) - 1))
                    kmax = max(k, 2 * (len(grid[0]) - 1))
                    logger.debug("rebuilding %s recursion table to %dx%d", self.name, nmax, kmax)
                    grid = self._builder(nmax, kmax)
                    self._grid = grid
        return grid[n][k]


_RECURSIONS = {
    SequenceId.B: RecursionTable("B", _b_grid),
    SequenceId.C: RecursionTable("C", _c_grid),
    SequenceId.D: RecursionTable("D", _d_grid),
}
_Q_TABLE = RecursionTable("Q", _q_grid)


def q_recursion(n: int, k: int) -> int:
    """Q(n,k) = (n+1) Q(n,k-1) + Σ_{m≥2} C(n,m) Q(n-m+1,k-1), Q(n,0) = 1."""
    DOMAIN.validate(n, k)
    return _Q_TABLE(n, k)


# ---------------------------------------------------------------------------
#  Exponential generating functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesTable:
    """Grid of exact values indexed [n][k]."""

    label: str
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def nmax(self) -> int:
        return len(self.entries) - 1

    @property
    def kmax(self) -> int:
        return len(self.entries[0]) - 1 if self.entries else -1

    def __getitem__(self, n: int) -> tuple[Fraction, ...]:
        return self.entries[n]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.entries for v in row)

    def as_ints(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError(f"table {self.label} has non-integer entries")
        return [[v.numerator for v in row] for row in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[ratio_to_str(v) for v in row] for row in self.entries]

    def to_frame(self) -> pd.DataFrame:
        """n as rows, k as columns; integers stay exact Python ints."""
        data = self.as_ints() if self.is_integral() else self.to_strings()
        frame = pd.DataFrame(data, dtype=object)
        frame.index.name = "n"
        frame.columns.name = "k"
        return frame


def _egf_numerator(seq: SequenceId, order: int) -> BivariateSeries:
    if seq is SequenceId.B:
        return BivariateSeries.exp_xy(order, order)
    if seq is SequenceId.C:
        return BivariateSeries.exp_x(order, order)
    return BivariateSeries.constant(1, order, order)


@functools.lru_cache(maxsize=16)
def _egf_series(seq: SequenceId, order: int) -> BivariateSeries:
    denominator = (BivariateSeries.exp_x(order, order) + BivariateSeries.exp_y(order, order)
                   - BivariateSeries.exp_xy(order, order))
    return _egf_numerator(seq, order) * denominator.reciprocal()


def _egf_order(nmax: int, kmax: int) -> int:
    order = 8
    while order < max(nmax, kmax):
        order *= 2
    return order


def egf_table(seq: SequenceId | str, nmax: int, kmax: int) -> SeriesTable:
    """n!·k!·[x^n y^k] of the double EGF of *seq*."""
    seq = sequence_id(seq)
    DOMAIN.validate(nmax, kmax)
    series = _egf_series(seq, _egf_order(nmax, kmax))
    return SeriesTable(
        f"{seq.value}-egf",
        tuple(tuple(series.egf_coefficient(n, k) for k in range(kmax + 1)) for n in range(nmax + 1)),
    )


def _egf_value(seq: SequenceId, n: int, k: int) -> int:
    value = _egf_series(seq, _egf_order(n, k)).egf_coefficient(n, k)
    assert value.denominator == 1
    return value.numerator


# ---------------------------------------------------------------------------
#  Public entry points
# ---------------------------------------------------------------------------

_CLOSED = {SequenceId.B: _b_closed, SequenceId.C: _c_closed, SequenceId.D: _d_closed}
_SIEVE = {SequenceId.B: _b_sieve, SequenceId.C: _c_sieve, SequenceId.D: _d_sieve}


def _local(seq: SequenceId, n: int, k: int, method: MethodId | str) -> int:
    method = method_id(method)
    DOMAIN.validate(n, k)
    if method in INTERPRETATION_METHODS:
        raise UnsupportedMethodError(
            seq.value, method.value,
            "counts through a combinatorial interpretation; use sequences.value()")
    if method is MethodId.Q_RECURSION:
        if seq is not SequenceId.B:
            raise UnsupportedMethodError(
                seq.value, method.value, "the Q-free recursion only counts the unrestricted class B")
        return q_recursion(n, k)
    if seq is SequenceId.C and (n == 0 or k == 0):
        # the C sieve vanishes at k = 0; the edge comes from the convention
        return DOMAIN.boundary(seq, n, k)
    if method is MethodId.CLOSED:
        return _CLOSED[seq](n, k)
    if method is MethodId.SIEVE:
        return _SIEVE[seq](n, k)
    if method is MethodId.RECURSION:
        return _RECURSIONS[seq](n, k)
    return _egf_value(seq, n, k)


def poly_bernoulli(n: int, k: int, method: MethodId | str = MethodId.CLOSED) -> int:
    """B(n, k), the number of lonesum n×k matrices."""
    return _local(SequenceId.B, n, k, method)


def c_relative(n: int, k: int, method: MethodId | str = MethodId.CLOSED) -> int:
    """C(n, k): lonesum n×k matrices without an all-zero column."""
    return _local(SequenceId.C, n, k, method)


def d_relative(n: int, k: int, method: MethodId | str = MethodId.CLOSED) -> int:
    """D(n, k): lonesum n×k matrices without all-zero rows or columns."""
    return _local(SequenceId.D, n, k, method)


BAND_PRESET = {SequenceId.B: "V", SequenceId.C: "Vstar", SequenceId.D: "Vstarstar"}
LONESUM_RESTRICTION = {
    SequenceId.B: matrix_enum.Restriction.NONE,
    SequenceId.C: matrix_enum.Restriction.COLS_NONZERO,
    SequenceId.D: matrix_enum.Restriction.ROWS_AND_COLS_NONZERO,
}
_CHROMATIC = {
    SequenceId.B: chromatic.b_via_chromatic,
    SequenceId.C: chromatic.c_via_chromatic,
    SequenceId.D: chromatic.d_via_chromatic,
}


def value(seq: SequenceId | str, n: int, k: int,
          method: MethodId | str = MethodId.CLOSED, *, budget: int | None = None) -> int:
    """Value of *seq* at (n, k) through any supported route."""
    seq, method = sequence_id(seq), method_id(method)
    DOMAIN.validate(n, k)
    if method is MethodId.PERMANENT:
        spec = perm_enum.BandSpec.preset(BAND_PRESET[seq], n, k)
        return perm_enum.permanent_ryser(perm_enum.band_matrix(spec))
    if method is MethodId.CHROMATIC:
        return _CHROMATIC[seq](n, k)
    if method is MethodId.ENUMERATION:
        return matrix_enum.count_avoiding(n, k, "L", LONESUM_RESTRICTION[seq], budget=budget)
    return _local(seq, n, k, method)


def table(seq: SequenceId | str, nmax: int, kmax: int,
          method: MethodId | str = MethodId.CLOSED) -> SeriesTable:
    """Values for 0 ≤ n ≤ nmax, 0 ≤ k ≤ kmax."""
    seq, method = sequence_id(seq), method_id(method)
    DOMAIN.validate(nmax, kmax)
    if method is MethodId.EGF:
        return egf_table(seq, nmax, kmax)
    return SeriesTable(
        f"{seq.value}-{method.value}",
        tuple(tuple(Fraction(value(seq, n, k, method)) for k in range(kmax + 1))
              for n in range(nmax + 1)),
    )


# ---------------------------------------------------------------------------
#  Binomial-transform relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    name: str
    lhs: int | None
    rhs: int | None
    applicable: bool

    @property
    def holds(self) -> bool | None:
        return self.lhs == self.rhs if self.applicable else None


@dataclass(frozen=True)
class TransformCheckReport:
    n: int
    k: int
    relations: tuple[RelationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.relations if r.applicable)


def binomial_transform_check(n: int, k: int) -> TransformCheckReport:
    """Evaluate both sides of the three B/C/D binomial-transform relations.

    (i)   B(n,k) = Σ_{i=0}^{k} binom(k,i) C(n,i)
    (ii)  C(n,k) = Σ_{i=1}^{n} binom(n,i) D(i,k)          for k ≥ 1
    (iii) B(n,k) = 1 + Σ_{i,j ≥ 1} binom(n,i) binom(k,j) D(i,j)

    (ii) fails at k = 0, where C(n,0) = 1 but every D(i,0) with i ≥ 1 is 0.
    """
    DOMAIN.validate(n, k)
    first = RelationCheck(
        "B(n,k) = sum_i binom(k,i) C(n,i)",
        poly_bernoulli(n, k),
        sum(binomial(k, i) * c_relative(n, i) for i in range(k + 1)),
        True,
    )
    has_columns = k >= 1
    second = RelationCheck(
        "C(n,k) = sum_i binom(n,i) D(i,k)",
        c_relative(n, k) if has_columns else None,
        sum(binomial(n, i) * d_relative(i, k) for i in range(1, n + 1)) if has_columns else None,
        has_columns,
    )
    third = RelationCheck(
        "B(n,k) = 1 + sum_ij binom(n,i) binom(k,j) D(i,j)",
        poly_bernoulli(n, k),
        1 + sum(binomial(n, i) * binomial(k, j) * d_relative(i, j)
                for i in range(1, n + 1) for j in range(1, k + 1)),
        True,
    )
    report = TransformCheckReport(n, k, (first, second, third))
    if not report.passed:
        logger.warning("binomial transform relation failed at (%d, %d)", n, k)
    return report
