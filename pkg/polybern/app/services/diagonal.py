"""Diagonal sums of B and C and the conjectured closed form 3·P_N."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from ..exceptions import DomainError
from .exact_core import binomial, factorial, ratio_to_str, stirling2
from .sequences import SequenceId, sequence_id, value

logger = logging.getLogger(__name__)

# Σ_{n+k=N} B(n,k) for N = 0..7 and Σ_{n+k=N} C(n,k) for N = 1..7, as printed
PRINTED_B_DIAGONAL = (1, 2, 4, 10, 32, 126, 588, 3170)
PRINTED_C_DIAGONAL = (1, 2, 5, 16, 63, 294, 1585)


def diagonal_sum(seq: SequenceId | str, N: int) -> int:
    """Σ_{n+k=N} of the sequence; for C only n ≥ 1 contributes."""
    seq = sequence_id(seq)
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}")
    first = 1 if seq is SequenceId.C else 0
    return sum(value(seq, n, N - n) for n in range(first, N + 1))


def diagonal_sums(seq: SequenceId | str, nmax: int) -> list[int]:
    return [diagonal_sum(seq, N) for N in range(nmax + 1)]


def alternating_diagonal_sum(N: int) -> int:
    """Σ_{n+k=N} (-1)^n B(n,k); zero for every N ≥ 1."""
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}")
    return sum((-1) ** n * value(SequenceId.B, n, N - n) for n in range(N + 1))


def three_p_n(N: int) -> Fraction:
    """(-1)^{N+1}/2 · Σ_{j=1}^{N+1} (-1)^j j! S(N+1,j) C(2j,j)/3^{j-1} · Σ_{i<j} 3^i/((2i+1) C(2i,i))."""
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}")
    inner = Fraction(0)
    total = Fraction(0)
    for j in range(1, N + 2):
        i = j - 1
        inner += Fraction(3 ** i, (2 * i + 1) * binomial(2 * i, i))
        term = Fraction(factorial(j) * stirling2(N + 1, j) * binomial(2 * j, j), 3 ** (j - 1)) * inner
        total += term if j % 2 == 0 else -term
    return (-1) ** (N + 1) * total / 2


@dataclass(frozen=True)
class DiagonalReport:
    N: int
    diag_sum: int
    three_p_n: Fraction
    equal: bool
    # N lies inside the printed range N = 1..7
    quoted: bool

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "diag_sum": str(self.diag_sum),
            "three_p_n": ratio_to_str(self.three_p_n),
            "equal": self.equal,
            "quoted": self.quoted,
        }


def stephan_report(N: int) -> DiagonalReport:
    diag = diagonal_sum(SequenceId.B, N)
    rhs = three_p_n(N)
    return DiagonalReport(N, diag, rhs, rhs.denominator == 1 and rhs.numerator == diag,
                          1 <= N < len(PRINTED_B_DIAGONAL))


def check_stephan(n_max: int) -> list[DiagonalReport]:
    """Evidence for Σ_{n+k=N} B(n,k) = 3 P_N, N = 0..n_max; never raises on a mismatch."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    reports = [stephan_report(N) for N in range(n_max + 1)]
    for r in reports:
        if not r.equal:
            logger.warning("diagonal sum %d and 3P_N = %s differ at N = %d",
                           r.diag_sum, ratio_to_str(r.three_p_n), r.N)
    return reports
