"""Akiyama-Tanigawa (AT) and Chen (BT) triangle transforms over exact rationals.

Starting from a seed row a_{0,i}, the two rules are

    AT:  a_{n+1,i} = (i+1) (a_{n,i} - a_{n,i+1})
    BT:  b_{n+1,i} = i b_{n,i} - (i+1) b_{n,i+1}

and the transform of the seed is the left edge a_{n,0} (resp. b_{n,0}).
Each step consumes one entry, so a_{n,0} needs exactly n+1 seed terms.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Literal, Sequence

from ..exceptions import DomainError, PreconditionError
from . import sequences
from .exact_core import Number, factorial, stirling2
from .sequences import DOMAIN, SequenceId, sequence_id

logger = logging.getLogger(__name__)

Rule = Literal["at", "bt"]


@dataclass(frozen=True)
class TriangleRow:
    entries: tuple[Fraction, ...]
    generation: int = 0

    @classmethod
    def seed(cls, values: Sequence[Number]) -> "TriangleRow":
        return cls(tuple(Fraction(v) for v in values), 0)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]


def _step(row: TriangleRow, rule: Callable[[int, Fraction, Fraction], Fraction]) -> TriangleRow:
    if len(row) < 2:
        raise PreconditionError(f"a triangle step needs at least 2 entries, got {len(row)}")
    e = row.entries
    return TriangleRow(tuple(rule(i, e[i], e[i + 1]) for i in range(len(e) - 1)), row.generation + 1)


def at_step(row: TriangleRow) -> TriangleRow:
    return _step(row, lambda i, a, b: (i + 1) * (a - b))


def bt_step(row: TriangleRow) -> TriangleRow:
    return _step(row, lambda i, a, b: i * a - (i + 1) * b)


_STEPS = {"at": at_step, "bt": bt_step}


def _prefix(seed: Sequence[Number], n: int) -> TriangleRow:
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if len(seed) < n + 1:
        raise PreconditionError(f"a_{{{n},0}} needs {n + 1} seed terms, got {len(seed)}")
    return TriangleRow.seed(seed[:n + 1])


def triangle(seed: Sequence[Number], n: int, rule: Rule = "at") -> list[TriangleRow]:
    """Rows 0..n of the triangle built from the first n+1 seed terms."""
    step = _STEPS[rule]
    rows = [_prefix(seed, n)]
    for _ in range(n):
        rows.append(step(rows[-1]))
    return rows


def at_run(seed: Sequence[Number], n: int) -> Fraction:
    return triangle(seed, n, "at")[-1][0]


def bt_run(seed: Sequence[Number], n: int) -> Fraction:
    return triangle(seed, n, "bt")[-1][0]


def at_closed(seed: Sequence[Number], n: int) -> Fraction:
    """a_{n,0} = Σ_i (-1)^i i! S(n+1,i+1) a_{0,i}."""
    row = _prefix(seed, n)
    return sum(((-1) ** i * factorial(i) * stirling2(n + 1, i + 1) * row[i] for i in range(n + 1)),
               Fraction(0))


def bt_closed(seed: Sequence[Number], n: int) -> Fraction:
    """b_{n,0} = Σ_i (-1)^i i! S(n,i) b_{0,i}.

    The sign is (-1)^i: iterating the BT rule twice gives
    b_{2,0} = -b_{0,1} + 2 b_{0,2}.
    """
    row = _prefix(seed, n)
    return sum(((-1) ** i * factorial(i) * stirling2(n, i) * row[i] for i in range(n + 1)),
               Fraction(0))


def bernoulli_numbers(count: int) -> list[Fraction]:
    """B_0..B_{count-1} from Σ_{j=0}^{m} C(m+1,j) B_j = 0, so B_1 = -1/2."""
    out: list[Fraction] = []
    for m in range(count):
        if m == 0:
            out.append(Fraction(1))
            continue
        acc = sum((comb(m + 1, j) * out[j] for j in range(m)), Fraction(0))
        out.append(-acc / (m + 1))
    return out


# ---------------------------------------------------------------------------
#  Seeds
# ---------------------------------------------------------------------------

def bernoulli_seed(length: int) -> list[Fraction]:
    return [Fraction(1, i + 1) for i in range(length)]


def power_seed(k: int, length: int, shift: int = 0) -> list[Fraction]:
    """(i + shift)^k for i = 0..length-1; 0^0 is 1."""
    return [Fraction((i + shift) ** k) for i in range(length)]


_SEED_RE = re.compile(r"^(bernoulli|pow|powplus)(?::(\d+))?$")


def parse_seed(text: str, length: int) -> list[Fraction]:
    """``bernoulli``, ``pow:k`` (i^k) or ``powplus:k`` ((i+1)^k)."""
    match = _SEED_RE.match(text.strip().lower())
    if not match or (match.group(1) != "bernoulli") != (match.group(2) is not None):
        raise DomainError(f"seed must be 'bernoulli', 'pow:k' or 'powplus:k', got {text!r}")
    kind, exponent = match.group(1), match.group(2)
    if kind == "bernoulli":
        return bernoulli_seed(length)
    return power_seed(int(exponent), length, shift=1 if kind == "powplus" else 0)


# ---------------------------------------------------------------------------
#  Poly-Bernoulli numbers from the transforms
# ---------------------------------------------------------------------------

def pb_via_transforms(seq: SequenceId | str, n: int, k: int) -> int:
    """B, C or D at (n, k) as (-1)^n times a transform of a power seed.

    C(n,k) = (-1)^n AT((i+1)^k)_n, D(n,k) = (-1)^n AT(i^k)_n and
    B(n,k) = (-1)^n BT((i+1)^k)_n.  The AT route for C does not reproduce the
    n = 0 and k = 0 edges, which come from the domain convention.
    """
    seq = sequence_id(seq)
    DOMAIN.validate(n, k)
    if seq is SequenceId.C and (n == 0 or k == 0):
        return DOMAIN.boundary(seq, n, k)
    if seq is SequenceId.C:
        raw = at_run(power_seed(k, n + 1, shift=1), n)
    elif seq is SequenceId.D:
        raw = at_run(power_seed(k, n + 1), n)
    else:
        raw = bt_run(power_seed(k, n + 1, shift=1), n)
    signed = (-1) ** n * raw
    if signed.denominator != 1:
        raise ArithmeticError(f"transform of {seq.value} at ({n}, {k}) is not an integer: {signed}")
    return signed.numerator


def transform_table(seq: SequenceId | str, nmax: int, kmax: int) -> sequences.SeriesTable:
    seq = sequence_id(seq)
    return sequences.SeriesTable(
        f"{seq.value}-transform",
        tuple(tuple(Fraction(pb_via_transforms(seq, n, k)) for k in range(kmax + 1))
              for n in range(nmax + 1)),
    )
