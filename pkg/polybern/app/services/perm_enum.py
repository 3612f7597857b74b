"""Exhaustive permutation families and the Ryser permanent.

Permutations are one-line tuples ``(π(1), ..., π(N))``.  Every family here is
described by an admissibility relation "π(i) = j is allowed"; enumeration
walks positions left to right in lexicographic order and cuts a branch as
soon as some later position has no unused admissible image left.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

import numpy as np

from ..config import load_settings
from ..exceptions import BudgetExceededError, DomainError, PreconditionError
from ..models.binary_matrix import BinaryMatrix
from ..models.tagged_permutation import Side, Symbol, TaggedPermutation

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]

MAX_RYSER_SIZE = 20


def is_permutation(p) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


def excedance_set(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(p, start=1) if v > i)


def weak_excedance_set(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(p, start=1) if v >= i)


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(p, start=1) if v == i)


def _check_budget(size: int, budget: int | None, what: str) -> None:
    limit = load_settings().perm_budget if budget is None else budget
    if size > limit:
        logger.warning("%s of size %d refused (budget %d)", what, size, limit)
        raise BudgetExceededError(what, limit, size)


# ---------------------------------------------------------------------------
#  Admissibility-driven enumeration
# ---------------------------------------------------------------------------

def _masks(size: int, allowed: Callable[[int, int], bool]) -> tuple[int, ...]:
    """masks[i-1] has bit j-1 set iff π(i) = j is admissible."""
    return tuple(
        sum(1 << (j - 1) for j in range(1, size + 1) if allowed(i, j))
        for i in range(1, size + 1)
    )


def _iter_assignments(masks: tuple[int, ...]) -> Iterator[Permutation]:
    size = len(masks)
    image = [0] * size

    def walk(pos: int, used: int):
        if pos == size:
            yield tuple(image)
            return
        free = masks[pos] & ~used
        while free:
            low = free & -free
            free ^= low
            now = used | low
            if any(masks[q] & ~now == 0 for q in range(pos + 1, size)):
                continue
            image[pos] = low.bit_length()
            yield from walk(pos + 1, now)

    yield from walk(0, 0)


def _count_assignments(masks: tuple[int, ...]) -> int:
    size = len(masks)

    # the subtree below a node depends only on the set of used images
    @functools.lru_cache(maxsize=None)
    def count(used: int) -> int:
        pos = bin(used).count("1")
        if pos == size:
            return 1
        total = 0
        free = masks[pos] & ~used
        while free:
            low = free & -free
            free ^= low
            now = used | low
            if any(masks[q] & ~now == 0 for q in range(pos + 1, size)):
                continue
            total += count(now)
        return total

    return count(0)


# ---------------------------------------------------------------------------
#  Band (Vesztergombi) windows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BandSpec:
    """Window on π(i) - i for permutations of [n+k+r].

    The lower end is -(k+r) and the upper end n+r; each end is inclusive
    unless marked strict.
    """

    n: int
    k: int
    r: int = 0
    low_strict: bool = False
    high_strict: bool = False

    def __post_init__(self):
        if min(self.n, self.k, self.r) < 0:
            raise DomainError("band parameters must be non-negative")

    PRESETS = ("V", "Vstar", "Vstarstar")

    @classmethod
    def preset(cls, name: str, n: int, k: int) -> "BandSpec":
        key = name.replace("*", "star").replace(" ", "")
        if key == "V":
            return cls(n, k)
        if key == "Vstar":
            return cls(n, k, high_strict=True)
        if key == "Vstarstar":
            return cls(n, k, low_strict=True, high_strict=True)
        raise DomainError(f"unknown band preset {name!r}; expected V, Vstar or Vstarstar")

    @classmethod
    def f_window(cls, r: int, n: int, k: int) -> "BandSpec":
        return cls(n, k, r, low_strict=True, high_strict=True)

    @property
    def size(self) -> int:
        return self.n + self.k + self.r

    @property
    def low(self) -> int:
        return -(self.k + self.r)

    @property
    def high(self) -> int:
        return self.n + self.r

    def admits(self, d: int) -> bool:
        above = d > self.low if self.low_strict else d >= self.low
        below = d < self.high if self.high_strict else d <= self.high
        return above and below

    def describe(self) -> str:
        lo = "<" if self.low_strict else "<="
        hi = "<" if self.high_strict else "<="
        return f"{self.low} {lo} pi(i)-i {hi} {self.high} on [{self.size}]"


def _band_masks(spec: BandSpec) -> tuple[int, ...]:
    return _masks(spec.size, lambda i, j: spec.admits(j - i))


def count_band(spec: BandSpec, *, budget: int | None = None) -> int:
    _check_budget(spec.size, budget, "band enumeration")
    return _count_assignments(_band_masks(spec))


def iter_band(spec: BandSpec, *, budget: int | None = None) -> Iterator[Permutation]:
    _check_budget(spec.size, budget, "band enumeration")
    return _iter_assignments(_band_masks(spec))


def band_matrix(spec: BandSpec) -> BinaryMatrix:
    """a_ij = 1 iff the window admits π(j) = i."""
    idx = np.arange(1, spec.size + 1)
    d = idx[:, None] - idx[None, :]
    above = d > spec.low if spec.low_strict else d >= spec.low
    below = d < spec.high if spec.high_strict else d <= spec.high
    return BinaryMatrix.from_numpy(above & below)


def permanent_ryser(m: BinaryMatrix, *, max_size: int = MAX_RYSER_SIZE) -> int:
    """Permanent by Ryser's formula, visiting column subsets in Gray-code order.

    perm(A) = (-1)^n Σ_S (-1)^|S| Π_i Σ_{j∈S} a_ij
    """
    if m.n_rows != m.n_cols:
        raise PreconditionError(f"permanent needs a square matrix, got {m.n_rows}x{m.n_cols}")
    n = m.n_rows
    if n == 0:
        return 1
    if n > max_size:
        raise BudgetExceededError("Ryser permanent size", max_size, n)
    cols = [[m.entry(i, j) for i in range(n)] for j in range(n)]
    sums = [0] * n
    chosen = 0
    size = 0
    total = 0
    for g in range(1, 1 << n):
        j = (g & -g).bit_length() - 1
        chosen ^= 1 << j
        if (chosen >> j) & 1:
            delta = 1
            size += 1
        else:
            delta = -1
            size -= 1
        for i, a in enumerate(cols[j]):
            if a:
                sums[i] += delta
        prod = 1
        for s in sums:
            if s == 0:
                prod = 0
                break
            prod *= s
        if prod:
            total += -prod if size & 1 else prod
    return total if n % 2 == 0 else -total


# ---------------------------------------------------------------------------
#  Excedance classes
# ---------------------------------------------------------------------------

class ExcedanceVariant(str, Enum):
    """Permutations of [n+k] classified by where they exceed.

    ``E``         i ≤ k ⇒ π(i) ≥ i, i > k ⇒ π(i) ≤ i   (B(n,k) elements)
    ``Estar``     i ≤ k ⇒ π(i) > i, i > k ⇒ π(i) ≤ i   (excedance set [k]; C(n,k))
    ``Estarstar`` i ≤ k ⇒ π(i) > i, i > k ⇒ π(i) < i   (also fixed-point free; D(n,k))
    ``WE_exact``  i ≤ k ⇒ π(i) ≥ i, i > k ⇒ π(i) < i   (weak excedance set [k]; C(k,n))
    """

    E = "E"
    ESTAR = "Estar"
    ESTARSTAR = "Estarstar"
    WE_EXACT = "WE_exact"


def _excedance_rule(k: int, variant: ExcedanceVariant) -> Callable[[int, int], bool]:
    if variant is ExcedanceVariant.E:
        return lambda i, j: j >= i if i <= k else j <= i
    if variant is ExcedanceVariant.ESTAR:
        return lambda i, j: j > i if i <= k else j <= i
    if variant is ExcedanceVariant.ESTARSTAR:
        return lambda i, j: j > i if i <= k else j < i
    return lambda i, j: j >= i if i <= k else j < i


def excedance_variant(variant: ExcedanceVariant | str) -> ExcedanceVariant:
    if isinstance(variant, ExcedanceVariant):
        return variant
    key = str(variant).replace("**", "starstar").replace("*", "star")
    try:
        return ExcedanceVariant(key)
    except ValueError as exc:
        raise DomainError(f"unknown excedance variant {variant!r}") from exc


def in_excedance_class(p: Permutation, k: int, variant: ExcedanceVariant | str) -> bool:
    """Membership straight from the excedance / weak excedance sets."""
    variant = excedance_variant(variant)
    top = frozenset(range(1, k + 1))
    exc, weak = excedance_set(p), weak_excedance_set(p)
    if variant is ExcedanceVariant.E:
        return exc <= top <= weak
    if variant is ExcedanceVariant.ESTAR:
        return exc == top
    if variant is ExcedanceVariant.ESTARSTAR:
        return exc == top == weak
    return weak == top


def _excedance_masks(n: int, k: int, variant: ExcedanceVariant) -> tuple[int, ...]:
    return _masks(n + k, _excedance_rule(k, variant))


def count_excedance_class(n: int, k: int, variant: ExcedanceVariant | str, *,
                          budget: int | None = None) -> int:
    variant = excedance_variant(variant)
    if n < 0 or k < 0:
        raise DomainError("n and k must be non-negative")
    _check_budget(n + k, budget, "excedance enumeration")
    return _count_assignments(_excedance_masks(n, k, variant))


def iter_excedance_class(n: int, k: int, variant: ExcedanceVariant | str, *,
                         budget: int | None = None) -> Iterator[Permutation]:
    variant = excedance_variant(variant)
    _check_budget(n + k, budget, "excedance enumeration")
    return _iter_assignments(_excedance_masks(n, k, variant))


def excedance_matrix(n: int, k: int, variant: ExcedanceVariant | str) -> BinaryMatrix:
    """a_ij = 1 iff π(i) = j is admissible for the class."""
    variant = excedance_variant(variant)
    rule = _excedance_rule(k, variant)
    size = n + k
    grid = np.array([[rule(i, j) for j in range(1, size + 1)] for i in range(1, size + 1)],
                    dtype=bool).reshape(size, size)
    return BinaryMatrix.from_numpy(grid)


# ---------------------------------------------------------------------------
#  Callan permutations
# ---------------------------------------------------------------------------

class End(str, Enum):
    ANY = "any"
    LEFT = "left"
    RIGHT = "right"

    def admits(self, side: Side) -> bool:
        if self is End.ANY:
            return True
        return side is (Side.LEFT if self is End.LEFT else Side.RIGHT)


_END_ALIASES = {"*": End.ANY, "any": End.ANY, "l": End.LEFT, "left": End.LEFT,
                "r": End.RIGHT, "right": End.RIGHT}


@dataclass(frozen=True)
class BoundaryClass:
    """Constraint on the side of the first and last symbol.

    The empty word (n = k = 0) belongs to every class.
    """

    first: End = End.ANY
    last: End = End.ANY

    @classmethod
    def parse(cls, text: str) -> "BoundaryClass":
        parts = [p.strip().lower() for p in text.split(",")]
        if len(parts) != 2 or any(p not in _END_ALIASES for p in parts):
            raise DomainError(f"boundary class must look like 'l,r' or '*,l', got {text!r}")
        return cls(_END_ALIASES[parts[0]], _END_ALIASES[parts[1]])

    def admits(self, p: TaggedPermutation) -> bool:
        if len(p) == 0:
            return True
        return self.first.admits(p.first_side) and self.last.admits(p.last_side)

    def __str__(self) -> str:
        short = {End.ANY: "*", End.LEFT: "l", End.RIGHT: "r"}
        return f"{short[self.first]},{short[self.last]}"


BOUNDARY_PRESETS = {
    "B": BoundaryClass(End.ANY, End.ANY),
    "C": BoundaryClass(End.ANY, End.LEFT),
    "D": BoundaryClass(End.LEFT, End.RIGHT),
}


def is_callan(p: TaggedPermutation) -> bool:
    """Every maximal same-sided run is increasing."""
    return all(
        all(a.value < b.value for a, b in zip(block, block[1:])) for block in p.blocks()
    )


def _callan_args(n, k, boundary, budget):
    if n < 0 or k < 0:
        raise DomainError("n and k must be non-negative")
    if isinstance(boundary, str):
        boundary = BoundaryClass.parse(boundary)
    _check_budget(n + k, budget, "Callan enumeration")
    return boundary


def iter_callan(n: int, k: int, boundary: BoundaryClass | str = BoundaryClass(), *,
                budget: int | None = None) -> Iterator[TaggedPermutation]:
    boundary = _callan_args(n, k, boundary, budget)
    word: list[Symbol] = []
    used = {Side.LEFT: [False] * (n + 1), Side.RIGHT: [False] * (k + 1)}
    limit = {Side.LEFT: n, Side.RIGHT: k}

    def walk():
        if len(word) == n + k:
            p = TaggedPermutation(n, k, tuple(word))
            if boundary.admits(p):
                yield p
            return
        last = word[-1] if word else None
        for side in (Side.LEFT, Side.RIGHT):
            if last is None and not boundary.first.admits(side):
                continue
            for v in range(1, limit[side] + 1):
                if used[side][v] or (last is not None and last.side is side and v < last.value):
                    continue
                used[side][v] = True
                word.append(Symbol(side, v))
                yield from walk()
                word.pop()
                used[side][v] = False

    yield from walk()


def count_callan(n: int, k: int, boundary: BoundaryClass | str = BoundaryClass(), *,
                 budget: int | None = None) -> int:
    boundary = _callan_args(n, k, boundary, budget)
    if n + k == 0:
        return 1
    full_l, full_r = (1 << n) - 1, (1 << k) - 1

    @functools.lru_cache(maxsize=None)
    def count(used_l: int, used_r: int, side: Side | None, last: int) -> int:
        if used_l == full_l and used_r == full_r:
            return 1 if boundary.last.admits(side) else 0
        total = 0
        for nxt, used, size in ((Side.LEFT, used_l, n), (Side.RIGHT, used_r, k)):
            if side is None and not boundary.first.admits(nxt):
                continue
            start = last + 1 if nxt is side else 1
            for v in range(start, size + 1):
                bit = 1 << (v - 1)
                if used & bit:
                    continue
                if nxt is Side.LEFT:
                    total += count(used_l | bit, used_r, nxt, v)
                else:
                    total += count(used_l, used_r | bit, nxt, v)
        return total

    return count(0, 0, None, 0)


def reverse_blocks(p: TaggedPermutation) -> TaggedPermutation:
    """Reverse the order of the maximal blocks, keeping each block intact."""
    return TaggedPermutation(p.n, p.k, TaggedPermutation.join(reversed(p.blocks())))
