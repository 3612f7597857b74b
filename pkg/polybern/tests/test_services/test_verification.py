import pytest

from polybern.app import create_app
from polybern.app.database import db
from polybern.app.exceptions import DomainError
from polybern.app.models.verification import VerificationRun
from polybern.app.services.verification import (
    ALL_FAMILIES,
    check_cell,
    parse_families,
    run_grid,
    run_identities,
    store_run,
)


# ---------------------------------------------------------------------------
#  Family selection
# ---------------------------------------------------------------------------

def test_parse_families_defaults_to_all():
    assert parse_families(None) == ALL_FAMILIES


def test_parse_families_keeps_grid_order():
    assert parse_families("callan, lonesum,Band") == ("lonesum", "band", "callan")
    assert parse_families(["orientation", "q"]) == ("q", "orientation")


def test_parse_families_rejects_unknown():
    with pytest.raises(DomainError):
        parse_families("lonesum,fibonacci")


# ---------------------------------------------------------------------------
#  Interpretation grid
# ---------------------------------------------------------------------------

def test_grid_passes_for_every_family_up_to_three():
    report = run_grid(3, 3)
    assert report.passed
    counts = report.counts()
    assert counts["mismatch"] == 0
    assert counts["skipped"] == 0
    # 16 cells, every family, three sequences each
    assert len(report.cells) == 16 * len(ALL_FAMILIES) * 3


def test_check_cell_reports_expected_values():
    cells = check_cell(2, 2, ("lonesum",), perm_max=8)
    assert [(c.seq, c.expected, c.got, c.status) for c in cells] == [
        ("B", 14, 14, "ok"), ("C", 7, 7, "ok"), ("D", 5, 5, "ok"),
    ]


def test_permutation_families_skip_beyond_perm_max():
    report = run_grid(2, 2, "band", perm_max=2)
    skipped = [c for c in report.cells if c.status == "skipped"]
    assert skipped
    assert all(c.n + c.k > 2 for c in skipped)
    assert all(c.got is None for c in skipped)
    assert report.passed


def test_parallel_grid_matches_serial():
    serial = run_grid(3, 2, "lonesum,gamma,excedance", jobs=1)
    parallel = run_grid(3, 2, "lonesum,gamma,excedance", jobs=2)
    assert serial.to_dict(include_cells=True) == parallel.to_dict(include_cells=True)


def test_grid_report_dict():
    data = run_grid(1, 1, "q").to_dict()
    assert data["passed"] is True
    assert data["families"] == ["q"]
    assert data["mismatches"] == []
    assert "cells" not in data


def test_negative_grid_rejected():
    with pytest.raises(DomainError):
        run_grid(-1, 2)


# ---------------------------------------------------------------------------
#  Identity suite
# ---------------------------------------------------------------------------

def test_identities_hold_on_small_grid():
    report = run_identities(5, transform_max=5, chromatic_max=4)
    assert report.passed, report.to_dict()
    assert [c.name for c in report.checks] == [
        "symmetry", "c_shift_symmetry", "kaneko_relation", "c_d_triple_relation",
        "binomial_transforms", "method_agreement", "q_recursion", "at_bt_transforms",
        "chromatic_identities",
    ]
    assert all(c.cases > 0 for c in report.checks)


def test_identities_hold_at_default_size():
    report = run_identities(12)
    assert report.nmax == 12
    assert report.passed, report.to_dict()


def test_identity_check_records_failures():
    report = run_identities(0)
    check = report.checks[0]
    check.expect(False, "forced")
    assert not report.passed
    assert report.to_dict()["checks"][0]["failures"] == ["forced"]


# ---------------------------------------------------------------------------
#  Persistence
# ---------------------------------------------------------------------------

def test_store_run_persists_cells():
    app = create_app({"SQLALCHEMY_DATABASE_URI": "sqlite:///:memory:"})
    report = run_grid(1, 1, "lonesum")
    identities = run_identities(2, transform_max=2, chromatic_max=2)
    with app.app_context():
        run = store_run(report, identities)
        stored = db.session.get(VerificationRun, run.id)
        assert stored.passed is True
        assert stored.families == ["lonesum"]
        assert len(stored.cells) == len(report.cells)
        assert stored.cells[0].to_dict()["expected"] == "1"
        assert stored.summary["passed"] is True
