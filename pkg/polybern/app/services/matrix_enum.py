"""Enumeration of 0/1 matrices avoiding forbidden submatrices.

Matrices are built row by row.  After every new row only the occurrences
that use the new row as their bottom row are checked, so a prefix that
already contains a forbidden pattern is never extended.  When all patterns
are 2×2 (the four presets), each column pair carries a 4-bit mask of the
(top-left, top-right) pairs seen so far.  A new row is admissible iff none of
its column pairs completes a pattern against that mask.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

from ..config import load_settings
from ..exceptions import BudgetExceededError, DomainError, PreconditionError
from ..models.binary_matrix import BinaryMatrix
from .parallel import apply_pool

logger = logging.getLogger(__name__)


class Restriction(str, Enum):
    NONE = "none"
    COLS_NONZERO = "cols_nonzero"
    ROWS_AND_COLS_NONZERO = "rows_and_cols_nonzero"

    @property
    def rows_nonzero(self) -> bool:
        return self is Restriction.ROWS_AND_COLS_NONZERO

    @property
    def cols_nonzero(self) -> bool:
        return self is not Restriction.NONE


@dataclass(frozen=True)
class PatternSet:
    id: str
    patterns: tuple[BinaryMatrix, ...]

    def __post_init__(self):
        if not self.patterns:
            raise PreconditionError("a pattern set needs at least one pattern")
        object.__setattr__(self, "patterns", tuple(self.patterns))

    @classmethod
    def custom(cls, patterns: Sequence[BinaryMatrix]) -> "PatternSet":
        return cls("custom", tuple(patterns))

    @property
    def all_2x2(self) -> bool:
        return all(p.n_rows == 2 and p.n_cols == 2 for p in self.patterns)


def _m(*lines: str) -> BinaryMatrix:
    return BinaryMatrix.from_strings(lines)


PRESETS: dict[str, PatternSet] = {
    "L": PatternSet("L", (_m("10", "01"), _m("01", "10"))),
    "Gamma": PatternSet("Gamma", (_m("11", "10"), _m("11", "11"))),
    "P": PatternSet("P", (_m("01", "10"), _m("11", "10"))),
    "Q": PatternSet("Q", (_m("11", "10"), _m("10", "11"))),
}
_PRESET_ALIASES = {"l": "L", "lonesum": "L", "gamma": "Gamma", "g": "Gamma", "p": "P", "q": "Q"}


def pattern_set(name: str | PatternSet) -> PatternSet:
    """Look up a preset by name (case-insensitive); pattern sets pass through."""
    if isinstance(name, PatternSet):
        return name
    key = _PRESET_ALIASES.get(str(name).strip().lower())
    if key is None:
        raise DomainError(f"unknown pattern set {name!r}; expected one of {', '.join(PRESETS)}")
    return PRESETS[key]


def _restriction(r: Restriction | str) -> Restriction:
    try:
        return Restriction(r)
    except ValueError as exc:
        raise DomainError(f"unknown restriction {r!r}") from exc


# ---------------------------------------------------------------------------
#  Containment
# ---------------------------------------------------------------------------

def contains_pattern(m: BinaryMatrix, p: BinaryMatrix) -> bool:
    """True iff some ordered row-subset × column-subset of *m* equals *p*."""
    if p.n_rows > m.n_rows or p.n_cols > m.n_cols:
        return False
    if p.n_rows == 0 or p.n_cols == 0:
        return True
    wanted = [p.column(j) for j in range(p.n_cols)]
    for rows in itertools.combinations(range(m.n_rows), p.n_rows):
        # greedy left-to-right column matching is exact for subsequences
        t = 0
        for j in range(m.n_cols):
            col = 0
            for pos, i in enumerate(rows):
                col |= ((m.rows[i] >> j) & 1) << pos
            if col == wanted[t]:
                t += 1
                if t == len(wanted):
                    return True
    return False


def avoids(m: BinaryMatrix, s: PatternSet | str) -> bool:
    return not any(contains_pattern(m, p) for p in pattern_set(s).patterns)


# ---------------------------------------------------------------------------
#  Pruned search
# ---------------------------------------------------------------------------

@dataclass
class AvoidanceSearch:
    """Depth-first row-by-row generation of ``M_n^k(S)`` under a restriction."""

    n: int
    k: int
    patterns: PatternSet
    restriction: Restriction = Restriction.NONE
    budget: int | None = None
    visited: int = field(default=0, init=False)

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise DomainError(f"matrix shape must be non-negative, got {self.n}x{self.k}")
        self.patterns = pattern_set(self.patterns)
        self.restriction = _restriction(self.restriction)
        if self.budget is None:
            self.budget = load_settings().search_budget
        self._full = (1 << self.k) - 1
        self.candidates = [v for v in range(1 << self.k)
                           if not (self.restriction.rows_nonzero and v == 0)]
        self._fast = self.patterns.all_2x2
        if self._fast:
            self._pairs = list(itertools.combinations(range(self.k), 2))
            # forbidden[x]: mask of top-pair codes that x completes to a pattern
            forbidden = [0, 0, 0, 0]
            for p in self.patterns.patterns:
                top = p.entry(0, 0) | (p.entry(0, 1) << 1)
                bottom = p.entry(1, 0) | (p.entry(1, 1) << 1)
                forbidden[bottom] |= 1 << top
            self._forbidden = forbidden
            self._codes = {
                v: tuple(((v >> a) & 1) | (((v >> b) & 1) << 1) for a, b in self._pairs)
                for v in self.candidates
            }

    # -- state transitions ---------------------------------------------
    def initial_state(self):
        return (0,) * len(self._pairs) if self._fast else ()

    def advance(self, state, v: int):
        """State after appending row *v*, or None if a pattern completes."""
        if self._fast:
            codes = self._codes[v]
            forbidden = self._forbidden
            for seen, x in zip(state, codes):
                if seen & forbidden[x]:
                    return None
            return tuple(seen | (1 << x) for seen, x in zip(state, codes))
        rows = state + (v,)
        for p in self.patterns.patterns:
            h = p.n_rows
            if h > len(rows):
                continue
            for prev in itertools.combinations(rows[:-1], h - 1):
                window = BinaryMatrix(h, self.k, prev + (v,))
                if contains_pattern(window, p):
                    return None
        return rows

    def _tick(self):
        self.visited += 1
        if self.visited > self.budget:
            logger.warning("matrix search for %dx%d %s aborted after %d nodes",
                           self.n, self.k, self.patterns.id, self.budget)
            raise BudgetExceededError("matrix search nodes", self.budget)

    def _leaf_ok(self, union: int) -> bool:
        return not self.restriction.cols_nonzero or union == self._full

    # -- counting ------------------------------------------------------
    def count(self) -> int:
        return self._count(0, self.initial_state(), 0)

    def count_from(self, first_row: int) -> int:
        """Count the subtree whose first row is *first_row*."""
        if self.n == 0:
            return 0
        state = self.advance(self.initial_state(), first_row)
        if state is None:
            return 0
        self._tick()
        return self._count(1, state, first_row)

    def _count(self, depth: int, state, union: int) -> int:
        if depth == self.n:
            return 1 if self._leaf_ok(union) else 0
        total = 0
        for v in self.candidates:
            nxt = self.advance(state, v)
            if nxt is None:
                continue
            self._tick()
            total += self._count(depth + 1, nxt, union | v)
        return total

    # -- generation ----------------------------------------------------
    def __iter__(self) -> Iterator[BinaryMatrix]:
        for rows in self._walk(0, self.initial_state(), 0, ()):
            yield BinaryMatrix(self.n, self.k, rows)

    def _walk(self, depth, state, union, rows):
        if depth == self.n:
            if self._leaf_ok(union):
                yield rows
            return
        for v in self.candidates:
            nxt = self.advance(state, v)
            if nxt is None:
                continue
            self._tick()
            yield from self._walk(depth + 1, nxt, union | v, rows + (v,))


def _count_subtree(n, k, patterns, restriction, budget, first_row):
    return AvoidanceSearch(n, k, patterns, restriction, budget).count_from(first_row)


def count_avoiding(n: int, k: int, s: PatternSet | str,
                   r: Restriction | str = Restriction.NONE, *,
                   budget: int | None = None, jobs: int = 1) -> int:
    """|M_n^k(S)| under restriction *r*.

    With ``jobs > 1`` the first-row subtrees are counted in worker processes;
    the budget then applies to each subtree separately.
    """
    search = AvoidanceSearch(n, k, pattern_set(s), _restriction(r), budget)
    if jobs <= 1 or n == 0:
        return search.count()
    args = [(n, k, search.patterns, search.restriction, search.budget, v)
            for v in search.candidates]
    return sum(apply_pool(_count_subtree, args, jobs=jobs))


def iter_avoiding(n: int, k: int, s: PatternSet | str,
                  r: Restriction | str = Restriction.NONE, *,
                  budget: int | None = None) -> Iterator[BinaryMatrix]:
    return iter(AvoidanceSearch(n, k, pattern_set(s), _restriction(r), budget))


def iter_all_matrices(n: int, k: int) -> Iterator[BinaryMatrix]:
    for rows in itertools.product(range(1 << k), repeat=n):
        yield BinaryMatrix(n, k, rows)


def count_avoiding_naive(n: int, k: int, s: PatternSet | str,
                         r: Restriction | str = Restriction.NONE, *,
                         budget: int | None = None) -> int:
    """Filter all 2^(nk) matrices; the oracle for :func:`count_avoiding`."""
    s, r = pattern_set(s), _restriction(r)
    budget = load_settings().search_budget if budget is None else budget
    if n * k > budget.bit_length() - 1:
        raise BudgetExceededError("naive matrix scan", budget, 1 << (n * k))
    total = 0
    for m in iter_all_matrices(n, k):
        if r.rows_nonzero and m.has_zero_row():
            continue
        if r.cols_nonzero and m.has_zero_column():
            continue
        if avoids(m, s):
            total += 1
    return total


# ---------------------------------------------------------------------------
#  Lonesum matrices
# ---------------------------------------------------------------------------

def _unique_by_bruteforce(m: BinaryMatrix) -> bool:
    row_sums, col_sums = m.row_sums(), m.col_sums()
    choices = [
        [sum(1 << j for j in cols) for cols in itertools.combinations(range(m.n_cols), s)]
        for s in row_sums
    ]
    found = 0
    for rows in itertools.product(*choices):
        if BinaryMatrix(m.n_rows, m.n_cols, rows).col_sums() == col_sums:
            found += 1
            if found > 1:
                return False
    return found == 1


def _unique_by_staircase(m: BinaryMatrix) -> bool:
    row_order = sorted(range(m.n_rows), key=lambda i: -bin(m.rows[i]).count("1"))
    col_sums = m.col_sums()
    col_order = sorted(range(m.n_cols), key=lambda j: -col_sums[j])
    for i in row_order:
        width = bin(m.rows[i]).count("1")
        # row must fill exactly the `width` heaviest columns
        for pos, j in enumerate(col_order):
            if m.entry(i, j) != (1 if pos < width else 0):
                return False
    return True


def is_lonesum_reconstruction(m: BinaryMatrix, method: str = "auto") -> bool:
    """True iff no other matrix of this shape has the same row and column sums.

    ``method`` is ``"staircase"`` (sort by sums, check the Ferrers filling),
    ``"bruteforce"`` (enumerate every matrix with the row sums) or ``"auto"``,
    which brute-forces shapes up to 3×3.
    """
    if method == "auto":
        method = "bruteforce" if m.n_rows <= 3 and m.n_cols <= 3 else "staircase"
    if method == "bruteforce":
        return _unique_by_bruteforce(m)
    if method == "staircase":
        return _unique_by_staircase(m)
    raise ValueError(f"unknown reconstruction method {method!r}")


@dataclass(frozen=True)
class LonesumDecomposition:
    """Equal-row and equal-column classes of a lonesum matrix.

    Non-zero classes are listed by increasing sum.  Row class *i* (1-based)
    meets column class *j* in ones exactly when ``i + j > ordinary_classes``.
    """

    n_rows: int
    n_cols: int
    row_classes: tuple[tuple[int, ...], ...]
    col_classes: tuple[tuple[int, ...], ...]
    zero_rows: tuple[int, ...]
    zero_cols: tuple[int, ...]

    @property
    def ordinary_classes(self) -> int:
        return len(self.row_classes)


def _classes(values: Sequence[int]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    groups: dict[int, list[int]] = {}
    zeros = []
    for idx, v in enumerate(values):
        if v == 0:
            zeros.append(idx)
        else:
            groups.setdefault(v, []).append(idx)
    ordered = sorted(groups.items(), key=lambda item: bin(item[0]).count("1"))
    return tuple(tuple(idx) for _, idx in ordered), tuple(zeros)


def lonesum_decompose(m: BinaryMatrix) -> LonesumDecomposition:
    if not avoids(m, PRESETS["L"]):
        raise PreconditionError("matrix is not lonesum (contains a 2x2 permutation matrix)")
    row_classes, zero_rows = _classes(m.rows)
    col_classes, zero_cols = _classes([m.column(j) for j in range(m.n_cols)])
    assert len(row_classes) == len(col_classes)
    return LonesumDecomposition(m.n_rows, m.n_cols, row_classes, col_classes, zero_rows, zero_cols)


def lonesum_compose(d: LonesumDecomposition) -> BinaryMatrix:
    rows = [0] * d.n_rows
    total = d.ordinary_classes
    for i, row_class in enumerate(d.row_classes, start=1):
        bits = 0
        for j, col_class in enumerate(d.col_classes, start=1):
            if i + j > total:
                for c in col_class:
                    bits |= 1 << c
        for r in row_class:
            rows[r] = bits
    return BinaryMatrix(d.n_rows, d.n_cols, tuple(rows))
