"""Constructive bijections between the combinatorial families.

* acyclic orientations of K_{n,k}  <->  lonesum matrices (entry coding)
* Callan permutations: phi/psi, left/right swap, and the (l,l) split
* zig-zag paths: P-free matrices  ->  permutations with restricted excedances

:func:`run_suite` checks every map exhaustively on small domains.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Callable, Iterable, Literal

from ..exceptions import BudgetExceededError, DomainError, PreconditionError
from ..models.binary_matrix import BinaryMatrix
from ..models.tagged_permutation import Side, Symbol, TaggedPermutation
from . import matrix_enum, perm_enum, sequences
from .perm_enum import BOUNDARY_PRESETS, BoundaryClass, ExcedanceVariant, Permutation

logger = logging.getLogger(__name__)

MAX_ORIENTATION_EDGES = 16


# ---------------------------------------------------------------------------
#  Orientations of complete bipartite graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrientedBipartite:
    """Orientation of K_{n,k} on vertices u_1..u_n, v_1..v_k.

    ``orientation[i][j] == 1`` means the edge is directed v_j -> u_i, 0 means
    u_i -> v_j.
    """

    n: int
    k: int
    orientation: BinaryMatrix

    def __post_init__(self):
        if (self.orientation.n_rows, self.orientation.n_cols) != (self.n, self.k):
            raise PreconditionError(
                f"orientation must be {self.n}x{self.k}, got "
                f"{self.orientation.n_rows}x{self.orientation.n_cols}")

    def edges(self) -> list[tuple[tuple[str, int], tuple[str, int]]]:
        out = []
        for i in range(self.n):
            for j in range(self.k):
                u, v = ("u", i + 1), ("v", j + 1)
                out.append((v, u) if self.orientation.entry(i, j) else (u, v))
        return out

    def sinks(self) -> set[tuple[str, int]]:
        m = self.orientation
        full = (1 << self.k) - 1
        found = {("u", i + 1) for i in range(self.n) if m.rows[i] == full}
        found |= {("v", j + 1) for j in range(self.k) if m.column(j) == 0}
        return found

    def sources(self) -> set[tuple[str, int]]:
        m = self.orientation
        full = (1 << self.n) - 1
        found = {("u", i + 1) for i in range(self.n) if m.rows[i] == 0}
        found |= {("v", j + 1) for j in range(self.k) if m.column(j) == full}
        return found


def orientation_of(m: BinaryMatrix) -> OrientedBipartite:
    return OrientedBipartite(m.n_rows, m.n_cols, m)


def matrix_of(o: OrientedBipartite) -> BinaryMatrix:
    return o.orientation


def orientation_is_acyclic(o: OrientedBipartite) -> bool:
    """Decided by a topological sort of the directed graph."""
    sorter = TopologicalSorter()
    for i in range(o.n):
        sorter.add(("u", i + 1))
    for j in range(o.k):
        sorter.add(("v", j + 1))
    for tail, head in o.edges():
        sorter.add(head, tail)
    try:
        sorter.prepare()
    except CycleError:
        return False
    return True


OrientationVariant = Literal["all", "unique_sink", "unique_source_sink"]


def _augmented_shape(n: int, k: int, variant: str) -> tuple[int, int]:
    if variant == "all":
        return n, k
    if variant == "unique_sink":
        return n, k + 1
    if variant == "unique_source_sink":
        return n + 1, k + 1
    raise DomainError(f"unknown orientation variant {variant!r}")


def _orientation_filter(n_rows: int, n_cols: int, variant: str) -> Callable[[OrientedBipartite], bool]:
    last_v = ("v", n_cols)
    last_u = ("u", n_rows)
    if variant == "all":
        return orientation_is_acyclic
    if variant == "unique_sink":
        return lambda o: o.sinks() == {last_v} and orientation_is_acyclic(o)
    return lambda o: (o.sinks() == {last_v} and o.sources() == {last_u}
                      and orientation_is_acyclic(o))


def count_orientations(n: int, k: int, variant: OrientationVariant = "all", *,
                       max_edges: int = MAX_ORIENTATION_EDGES) -> int:
    """Acyclic orientations of K_{n,k}, K_{n,k+1} or K_{n+1,k+1}.

    ``unique_sink`` requires the added vertex v_{k+1} to be the only sink;
    ``unique_source_sink`` also requires the added u_{n+1} to be the only source.
    """
    if n < 0 or k < 0:
        raise DomainError("n and k must be non-negative")
    rows, cols = _augmented_shape(n, k, variant)
    if rows * cols > max_edges:
        logger.warning("orientation count on K_%d,%d refused (%d edges)", rows, cols, rows * cols)
        raise BudgetExceededError("orientation enumeration edges", max_edges, rows * cols)
    keep = _orientation_filter(rows, cols, variant)
    return sum(1 for m in matrix_enum.iter_all_matrices(rows, cols) if keep(orientation_of(m)))


# ---------------------------------------------------------------------------
#  Callan permutations
# ---------------------------------------------------------------------------

def _require(p: TaggedPermutation, boundary: BoundaryClass, what: str) -> None:
    if not perm_enum.is_callan(p) or len(p) == 0 or not boundary.admits(p):
        raise PreconditionError(f"{what} expects a Callan permutation in class ({boundary}), got {p}")


def callan_phi(p: TaggedPermutation) -> TaggedPermutation:
    """C_n^k(*,l) -> C_{n-1}^{k+1}(*,r).

    The largest left value becomes the new right value k+1.  Unless it was
    the last symbol, the right block that followed it moves to the end.
    """
    _require(p, BOUNDARY_PRESETS["C"], "callan_phi")
    symbols = list(p.symbols)
    pos = p.index_of(Symbol.left(p.n))
    symbols[pos] = Symbol.right(p.k + 1)
    if pos < len(symbols) - 1:
        end = pos + 1
        while end < len(symbols) and symbols[end].side is Side.RIGHT:
            end += 1
        moved = symbols[pos + 1:end]
        symbols = symbols[:pos + 1] + symbols[end:] + moved
    return TaggedPermutation(p.n - 1, p.k + 1, tuple(symbols))


def callan_psi(p: TaggedPermutation) -> TaggedPermutation:
    """C_n^k(*,r) -> C_{n+1}^{k-1}(*,l), the inverse of :func:`callan_phi`."""
    _require(p, BoundaryClass(perm_enum.End.ANY, perm_enum.End.RIGHT), "callan_psi")
    symbols = list(p.symbols)
    pos = p.index_of(Symbol.right(p.k))
    symbols[pos] = Symbol.left(p.n + 1)
    if pos < len(symbols) - 1:
        start = len(symbols)
        while symbols[start - 1].side is Side.RIGHT:
            start -= 1
        moved = symbols[start:]
        symbols = symbols[:pos + 1] + moved + symbols[pos + 1:start]
    return TaggedPermutation(p.n + 1, p.k - 1, tuple(symbols))


def callan_swap(p: TaggedPermutation) -> TaggedPermutation:
    """Exchange the roles of left and right values: (n, k) -> (k, n)."""
    return TaggedPermutation(p.k, p.n, tuple(Symbol(s.side.other(), s.value) for s in p))


@dataclass(frozen=True)
class SplitResult:
    """``branch`` is ``"lr"`` for C_{n-1}^{k+1}(l,r) and ``"rl"`` for C_{n-1}^k(r,l)."""

    branch: Literal["lr", "rl"]
    permutation: TaggedPermutation


_LL = BoundaryClass(perm_enum.End.LEFT, perm_enum.End.LEFT)


def callan_ll_split(p: TaggedPermutation) -> SplitResult:
    _require(p, _LL, "callan_ll_split")
    if p[0] == Symbol.left(p.n):
        return SplitResult("rl", TaggedPermutation(p.n - 1, p.k, p.symbols[1:]))
    return SplitResult("lr", callan_phi(p))


def callan_ll_merge(result: SplitResult) -> TaggedPermutation:
    """Inverse of :func:`callan_ll_split`."""
    q = result.permutation
    if result.branch == "rl":
        if len(q) and not BoundaryClass.parse("r,l").admits(q):
            raise PreconditionError(f"expected a permutation in class (r,l), got {q}")
        return TaggedPermutation(q.n + 1, q.k, (Symbol.left(q.n + 1),) + q.symbols)
    if not BOUNDARY_PRESETS["D"].admits(q) or len(q) == 0:
        raise PreconditionError(f"expected a permutation in class (l,r), got {q}")
    return callan_psi(q)


# ---------------------------------------------------------------------------
#  Zig-zag paths
# ---------------------------------------------------------------------------

def zigzag_to_permutation(m: BinaryMatrix) -> Permutation:
    """Follow the zig-zag path from every border label of a P-free matrix.

    Columns carry labels 1..k left to right and rows carry k+1..k+n bottom to
    top.  A path enters at the top of its column going down, or at the left
    end of its row going right, turns at every 1 and ends at the bottom of a
    column or the right end of a row; π(start label) is the exit label.
    """
    if not matrix_enum.avoids(m, "P"):
        raise PreconditionError("zig-zag paths are only defined on P-free matrices")
    n, k = m.n_rows, m.n_cols

    def row_label(r: int) -> int:
        return k + (n - r)

    def walk(r: int, c: int, down: bool) -> int:
        while r < n and c < k:
            if m.entry(r, c):
                down = not down
            if down:
                r += 1
            else:
                c += 1
        return c + 1 if r == n else row_label(r)

    image = [0] * (n + k)
    for c in range(k):
        image[c] = walk(0, c, True)
    for r in range(n):
        image[row_label(r) - 1] = walk(r, 0, False)
    return tuple(image)


# ---------------------------------------------------------------------------
#  Exhaustive suite
# ---------------------------------------------------------------------------

@dataclass
class BijectionCheck:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, detail: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(detail)

    def to_dict(self) -> dict:
        return {"name": self.name, "cases": self.cases, "passed": self.passed,
                "failures": list(self.failures)}


@dataclass
class BijectionReport:
    checks: list[BijectionCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _shapes(max_size: int, min_n: int = 0) -> Iterable[tuple[int, int]]:
    for total in range(max_size + 1):
        for n in range(min_n, total + 1):
            yield n, total - n


def _check_phi_psi(max_size: int) -> BijectionCheck:
    check = BijectionCheck("phi_psi_round_trip")
    for n, k in _shapes(max_size, min_n=1):
        domain = list(perm_enum.iter_callan(n, k, "*,l", budget=max_size))
        images = set()
        for p in domain:
            check.cases += 1
            q = callan_phi(p)
            images.add(q)
            if not (perm_enum.is_callan(q) and q.last_side is Side.RIGHT and callan_psi(q) == p):
                check.fail(f"phi/psi fails on {p} ({n},{k})")
        target = perm_enum.count_callan(n - 1, k + 1, "*,r", budget=max_size)
        if len(images) != len(domain) or len(images) != target:
            check.fail(f"phi is not onto C({n - 1},{k + 1})(*,r): {len(images)} of {target}")
    return check


def _check_swap(max_size: int) -> BijectionCheck:
    check = BijectionCheck("swap_involution_and_symmetry")
    for n, k in _shapes(max_size):
        for p in perm_enum.iter_callan(n, k, budget=max_size):
            check.cases += 1
            if callan_swap(callan_swap(p)) != p:
                check.fail(f"swap is not an involution on {p}")
    for n, k in _shapes(max_size, min_n=1):
        images = {callan_psi(callan_swap(p)) for p in perm_enum.iter_callan(n, k, "*,l", budget=max_size)}
        target = set(perm_enum.iter_callan(k + 1, n - 1, "*,l", budget=max_size))
        if images != target:
            check.fail(f"swap then psi does not map C({n},{k})(*,l) onto C({k + 1},{n - 1})(*,l)")
    return check


def _check_ll_split(max_size: int) -> BijectionCheck:
    check = BijectionCheck("ll_split_cover")
    for n, k in _shapes(max_size, min_n=1):
        seen = {"lr": set(), "rl": set()}
        for p in perm_enum.iter_callan(n, k, "l,l", budget=max_size):
            check.cases += 1
            result = callan_ll_split(p)
            if result.permutation in seen[result.branch] or callan_ll_merge(result) != p:
                check.fail(f"ll split not invertible on {p}")
            seen[result.branch].add(result.permutation)
        lr = set(perm_enum.iter_callan(n - 1, k + 1, "l,r", budget=max_size))
        rl = set(perm_enum.iter_callan(n - 1, k, "r,l", budget=max_size))
        if seen["lr"] != lr or seen["rl"] != rl:
            check.fail(f"ll split images at ({n},{k}) are not C(l,r) and C(r,l)")
    return check


_ZIGZAG_TARGETS = (
    (matrix_enum.Restriction.NONE, ExcedanceVariant.E),
    (matrix_enum.Restriction.COLS_NONZERO, ExcedanceVariant.ESTAR),
    (matrix_enum.Restriction.ROWS_AND_COLS_NONZERO, ExcedanceVariant.ESTARSTAR),
)


def _check_zigzag(matrix_size: int) -> BijectionCheck:
    check = BijectionCheck("zigzag_bijection")
    for n, k in itertools.product(range(1, matrix_size + 1), repeat=2):
        for restriction, variant in _ZIGZAG_TARGETS:
            images = []
            for m in matrix_enum.iter_avoiding(n, k, "P", restriction):
                check.cases += 1
                images.append(zigzag_to_permutation(m))
            target = set(perm_enum.iter_excedance_class(n, k, variant, budget=n + k))
            if len(set(images)) != len(images):
                check.fail(f"zig-zag not injective on {n}x{k} ({restriction.value})")
            if set(images) != target:
                check.fail(f"zig-zag image on {n}x{k} ({restriction.value}) is not {variant.value}")
    return check


def _check_orientations(max_cells: int, matrix_size: int) -> BijectionCheck:
    check = BijectionCheck("orientation_lonesum_coding")
    for n in range(1, max_cells + 1):
        for k in range(1, max_cells // n + 1):
            for m in matrix_enum.iter_all_matrices(n, k):
                check.cases += 1
                if orientation_is_acyclic(orientation_of(m)) != matrix_enum.avoids(m, "L"):
                    check.fail(f"acyclicity and L-avoidance disagree on {m.to_strings()}")
    expected = {"all": "B", "unique_sink": "C", "unique_source_sink": "D"}
    for n, k in itertools.product(range(matrix_size + 1), repeat=2):
        for variant, seq in expected.items():
            got = count_orientations(n, k, variant)
            want = sequences.value(seq, n, k)
            if got != want:
                check.fail(f"{variant} orientations of ({n},{k}): {got} != {seq}={want}")
    return check


def run_suite(max_size: int = 7, matrix_size: int = 3, max_cells: int = 12) -> BijectionReport:
    """Every round-trip and image check, exhaustive up to the given sizes.

    *max_size* bounds n+k for the Callan maps, *matrix_size* bounds n and k for
    the zig-zag map and the orientation counts, *max_cells* bounds n·k for the
    orientation coding.
    """
    checks = [
        _check_phi_psi(max_size),
        _check_swap(max_size),
        _check_ll_split(max_size),
        _check_zigzag(matrix_size),
        _check_orientations(max_cells, matrix_size),
    ]
    for c in checks:
        if not c.passed:
            logger.warning("bijection check %s failed: %s", c.name, c.failures[0])
    return BijectionReport(checks)
