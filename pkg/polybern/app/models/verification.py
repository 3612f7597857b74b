from __future__ import annotations

from datetime import datetime
from ..database import db


class VerificationRun(db.Model):
    """One stored run of the interpretation grid (plus an optional identity summary)."""
    __tablename__ = 'verification_runs'

    id = db.Column(db.Integer, primary_key=True)
    nmax = db.Column(db.Integer, nullable=False)
    kmax = db.Column(db.Integer, nullable=False)
    families = db.Column(db.JSON, nullable=False)
    passed = db.Column(db.Boolean, nullable=False)
    # identity-suite report, when the run included one
    summary = db.Column(db.JSON, nullable=True)
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    cells = db.relationship('VerificationCell', backref='run', lazy=True,
                            cascade='all, delete-orphan', order_by='VerificationCell.id')

    def __init__(self, *, nmax: int, kmax: int, families: list, passed: bool, summary=None):
        self.nmax = nmax
        self.kmax = kmax
        self.families = families
        self.passed = passed
        self.summary = summary

    def to_dict(self, include_cells: bool = False):
        data = {
            'id': self.id,
            'nmax': self.nmax,
            'kmax': self.kmax,
            'families': self.families,
            'passed': self.passed,
            'summary': self.summary,
            'created_at': self.created_at.isoformat() if self.created_at else None,
        }
        if include_cells:
            data['cells'] = [c.to_dict() for c in self.cells]
        return data


class VerificationCell(db.Model):
    """Count of one family at one (n, k) against the closed formula."""
    __tablename__ = 'verification_cells'

    id = db.Column(db.Integer, primary_key=True)
    run_id = db.Column(db.Integer, db.ForeignKey('verification_runs.id'), nullable=False)
    family = db.Column(db.String(32), nullable=False)
    seq = db.Column(db.String(1), nullable=False)
    n = db.Column(db.Integer, nullable=False)
    k = db.Column(db.Integer, nullable=False)
    # big integers are kept as decimal strings
    expected = db.Column(db.String(64), nullable=False)
    got = db.Column(db.String(64), nullable=True)
    status = db.Column(db.String(16), nullable=False)

    def __init__(self, *, family: str, seq: str, n: int, k: int, expected: int,
                 got: int | None, status: str):
        self.family = family
        self.seq = seq
        self.n = n
        self.k = k
        self.expected = str(expected)
        self.got = None if got is None else str(got)
        self.status = status

    def to_dict(self):
        return {
            'family': self.family,
            'seq': self.seq,
            'n': self.n,
            'k': self.k,
            'expected': self.expected,
            'got': self.got,
            'status': self.status,
        }
