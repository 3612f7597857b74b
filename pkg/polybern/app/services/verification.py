"""Cross-checks of every interpretation and identity against the closed formulas.

``run_grid`` counts each combinatorial family at every (n, k) of a grid and
compares with B/C/D; cells are independent and are fanned out over a process
pool.  ``run_identities`` checks the symmetry, shift and transform identities
and the agreement of all local methods.  ``store_run`` persists a grid report.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..exceptions import BudgetExceededError, DomainError
from . import bijections, chromatic, matrix_enum, perm_enum, transforms
from .parallel import apply_pool
from .perm_enum import BOUNDARY_PRESETS, BandSpec, ExcedanceVariant
from .sequences import (BAND_PRESET, LONESUM_RESTRICTION, MethodId, SequenceId,
                        binomial_transform_check, q_recursion, value)

logger = logging.getLogger(__name__)

MATRIX_FAMILIES = {"lonesum": "L", "gamma": "Gamma", "p": "P", "q": "Q"}
PERMUTATION_FAMILIES = ("band", "excedance", "callan")
ALL_FAMILIES = tuple(MATRIX_FAMILIES) + PERMUTATION_FAMILIES + ("orientation",)

EXCEDANCE_VARIANT = {
    SequenceId.B: ExcedanceVariant.E,
    SequenceId.C: ExcedanceVariant.ESTAR,
    SequenceId.D: ExcedanceVariant.ESTARSTAR,
}
ORIENTATION_VARIANT = {
    SequenceId.B: "all",
    SequenceId.C: "unique_sink",
    SequenceId.D: "unique_source_sink",
}

DEFAULT_PERM_MAX = 8


def parse_families(text: str | Iterable[str] | None) -> tuple[str, ...]:
    if text is None:
        return ALL_FAMILIES
    names = text.split(",") if isinstance(text, str) else list(text)
    names = [n.strip().lower() for n in names if n.strip()]
    unknown = [n for n in names if n not in ALL_FAMILIES]
    if unknown:
        raise DomainError(f"unknown families {unknown}; expected some of {', '.join(ALL_FAMILIES)}")
    # grid order is fixed, whatever order the caller used
    return tuple(f for f in ALL_FAMILIES if f in names)


# ---------------------------------------------------------------------------
#  Interpretation grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CellResult:
    family: str
    seq: str
    n: int
    k: int
    expected: int
    got: int | None
    # "ok", "mismatch" or "skipped"
    status: str

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "seq": self.seq,
            "n": self.n,
            "k": self.k,
            "expected": str(self.expected),
            "got": None if self.got is None else str(self.got),
            "status": self.status,
        }


def _family_count(family: str, seq: SequenceId, n: int, k: int, perm_max: int) -> int | None:
    """Count of *family* at (n, k) for *seq*, or None when out of exhaustive range."""
    if family in MATRIX_FAMILIES:
        return matrix_enum.count_avoiding(n, k, MATRIX_FAMILIES[family], LONESUM_RESTRICTION[seq])
    if family in PERMUTATION_FAMILIES and n + k > perm_max:
        return None
    if family == "band":
        return perm_enum.count_band(BandSpec.preset(BAND_PRESET[seq], n, k), budget=perm_max)
    if family == "excedance":
        return perm_enum.count_excedance_class(n, k, EXCEDANCE_VARIANT[seq], budget=perm_max)
    if family == "callan":
        return perm_enum.count_callan(n, k, BOUNDARY_PRESETS[seq.value], budget=perm_max)
    try:
        return bijections.count_orientations(n, k, ORIENTATION_VARIANT[seq])
    except BudgetExceededError:
        return None


def check_cell(n: int, k: int, families: Sequence[str], perm_max: int) -> list[CellResult]:
    """All families at one (n, k).  Module-level so worker processes can run it."""
    out = []
    for family in families:
        for seq in SequenceId:
            expected = value(seq, n, k)
            got = _family_count(family, seq, n, k, perm_max)
            if got is None:
                status = "skipped"
            else:
                status = "ok" if got == expected else "mismatch"
            out.append(CellResult(family, seq.value, n, k, expected, got, status))
    return out


@dataclass
class GridReport:
    nmax: int
    kmax: int
    families: tuple[str, ...]
    cells: list[CellResult] = field(default_factory=list)

    @property
    def mismatches(self) -> list[CellResult]:
        return [c for c in self.cells if c.status == "mismatch"]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def counts(self) -> dict[str, int]:
        out = {"ok": 0, "mismatch": 0, "skipped": 0}
        for c in self.cells:
            out[c.status] += 1
        return out

    def to_dict(self, include_cells: bool = False) -> dict:
        data = {
            "nmax": self.nmax,
            "kmax": self.kmax,
            "families": list(self.families),
            "passed": self.passed,
            "counts": self.counts(),
            "mismatches": [c.to_dict() for c in self.mismatches],
        }
        if include_cells:
            data["cells"] = [c.to_dict() for c in self.cells]
        return data


def run_grid(nmax: int, kmax: int, families: str | Iterable[str] | None = None, *,
             jobs: int = 1, perm_max: int = DEFAULT_PERM_MAX, verbose: bool = False) -> GridReport:
    """Every family at every 0 ≤ n ≤ nmax, 0 ≤ k ≤ kmax, in cell order."""
    if nmax < 0 or kmax < 0:
        raise DomainError("grid bounds must be non-negative")
    families = parse_families(families)
    cells = [(n, k, families, perm_max) for n in range(nmax + 1) for k in range(kmax + 1)]
    results = apply_pool(check_cell, cells, jobs=jobs, verbose=verbose, desc="verify")
    report = GridReport(nmax, kmax, families, [c for chunk in results for c in chunk])
    for c in report.mismatches:
        logger.warning("%s/%s at (%d, %d): expected %d, got %d",
                       c.family, c.seq, c.n, c.k, c.expected, c.got)
    logger.info("verification grid %dx%d: %s", nmax, kmax, report.counts())
    return report


# ---------------------------------------------------------------------------
#  Identity suite
# ---------------------------------------------------------------------------

@dataclass
class IdentityCheck:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, detail: str) -> None:
        self.cases += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(detail)

    def to_dict(self) -> dict:
        return {"name": self.name, "cases": self.cases, "passed": self.passed,
                "failures": list(self.failures)}


@dataclass
class IdentityReport:
    nmax: int
    checks: list[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"nmax": self.nmax, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


_LOCAL = (MethodId.CLOSED, MethodId.SIEVE, MethodId.RECURSION, MethodId.EGF)


def run_identities(nmax: int = 12, *, transform_max: int = 10, chromatic_max: int = 8) -> IdentityReport:
    """Identities of B, C, D for 0 ≤ n, k ≤ nmax."""
    if nmax < 0:
        raise DomainError("nmax must be non-negative")
    B = functools.partial(value, SequenceId.B)
    C = functools.partial(value, SequenceId.C)
    D = functools.partial(value, SequenceId.D)
    grid = [(n, k) for n in range(nmax + 1) for k in range(nmax + 1)]

    symmetry = IdentityCheck("symmetry")
    shift = IdentityCheck("c_shift_symmetry")
    kaneko = IdentityCheck("kaneko_relation")
    triple = IdentityCheck("c_d_triple_relation")
    transform = IdentityCheck("binomial_transforms")
    methods = IdentityCheck("method_agreement")
    qrec = IdentityCheck("q_recursion")
    at_bt = IdentityCheck("at_bt_transforms")
    chrom = IdentityCheck("chromatic_identities")

    for n, k in grid:
        symmetry.expect(B(n, k) == B(k, n) and D(n, k) == D(k, n), f"symmetry fails at ({n},{k})")
        if n >= 1 and k + 1 <= nmax:
            shift.expect(C(n, k) == C(k + 1, n - 1), f"C({n},{k}) != C({k + 1},{n - 1})")
        if n >= 1 and k >= 1:
            kaneko.expect(B(n, k) == C(n, k) + C(n + 1, k - 1), f"B = C + C fails at ({n},{k})")
        if n >= 2 and k >= 1:
            triple.expect(C(n, k) == D(n, k) + D(n - 1, k) + D(n - 1, k + 1),
                          f"C = D + D + D fails at ({n},{k})")
        transform.expect(binomial_transform_check(n, k).passed, f"binomial transforms fail at ({n},{k})")
        for seq in SequenceId:
            got = {m.value: value(seq, n, k, m) for m in _LOCAL}
            methods.expect(len(set(got.values())) == 1, f"{seq.value}({n},{k}) methods disagree: {got}")
        qrec.expect(q_recursion(n, k) == B(n, k), f"Q recursion fails at ({n},{k})")
        if n <= transform_max and k <= transform_max:
            for seq in SequenceId:
                at_bt.expect(transforms.pb_via_transforms(seq, n, k) == value(seq, n, k),
                             f"transform route for {seq.value} fails at ({n},{k})")
        if n <= chromatic_max and k <= chromatic_max:
            chrom.expect(chromatic.b_via_chromatic(n, k) == B(n, k)
                         and chromatic.c_via_chromatic(n, k) == C(n, k)
                         and chromatic.d_via_chromatic(n, k) == D(n, k),
                         f"chromatic identities fail at ({n},{k})")

    report = IdentityReport(nmax, [symmetry, shift, kaneko, triple, transform, methods, qrec, at_bt, chrom])
    for c in report.checks:
        if not c.passed:
            logger.warning("identity %s failed: %s", c.name, c.failures[0])
    return report


# ---------------------------------------------------------------------------
#  Persistence
# ---------------------------------------------------------------------------

def store_run(report: GridReport, identities: IdentityReport | None = None):
    """Persist *report* as a VerificationRun with one row per cell.  Needs an app context."""
    from ..database import db
    from ..models.verification import VerificationCell, VerificationRun

    run = VerificationRun(
        nmax=report.nmax,
        kmax=report.kmax,
        families=list(report.families),
        passed=report.passed and (identities is None or identities.passed),
        summary=identities.to_dict() if identities else None,
    )
    for c in report.cells:
        run.cells.append(VerificationCell(family=c.family, seq=c.seq, n=c.n, k=c.k,
                                          expected=c.expected, got=c.got, status=c.status))
    db.session.add(run)
    db.session.commit()
    logger.info("stored verification run %d (%d cells)", run.id, len(report.cells))
    return run
