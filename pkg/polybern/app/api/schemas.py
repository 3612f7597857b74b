"""Marshmallow schemas shared by the JSON API and the CLI.

Every big integer is rendered as a decimal string and every rational as
``"p/q"``, so consumers never lose precision beyond 2^53.
"""

from __future__ import annotations

from fractions import Fraction

from marshmallow import Schema, ValidationError, fields, validate

from ..services.exact_core import ratio_to_str

SEQUENCES = ("B", "C", "D")


class BigInt(fields.Field):
    """Python int <-> decimal string."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return str(int(value))

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise ValidationError("expected a decimal integer") from exc


class RatioField(fields.Field):
    """Fraction <-> "p/q" string."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return ratio_to_str(value)

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            return Fraction(value)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError("expected a rational 'p/q'") from exc


# ---------------------------------------------------------------------------
#  Query arguments
# ---------------------------------------------------------------------------

class TableQuerySchema(Schema):
    seq = fields.String(load_default="B", validate=validate.OneOf(SEQUENCES))
    nmax = fields.Integer(load_default=5, validate=validate.Range(min=0, max=60))
    kmax = fields.Integer(load_default=5, validate=validate.Range(min=0, max=60))
    method = fields.String(load_default="closed")


class ValueQuerySchema(Schema):
    method = fields.String(load_default="closed")


class DiagonalQuerySchema(Schema):
    seq = fields.String(load_default="B", validate=validate.OneOf(("B", "C")))
    nmax = fields.Integer(load_default=7, validate=validate.Range(min=0, max=60))


class ConjectureQuerySchema(Schema):
    nmax = fields.Integer(load_default=7, validate=validate.Range(min=0, max=60))


# ---------------------------------------------------------------------------
#  Payloads
# ---------------------------------------------------------------------------

class ValueSchema(Schema):
    seq = fields.String()
    n = fields.Integer()
    k = fields.Integer()
    method = fields.String()
    value = BigInt()


class TableSchema(Schema):
    label = fields.String()
    nmax = fields.Integer()
    kmax = fields.Integer()
    rows = fields.List(fields.List(BigInt()))


class DiagonalReportSchema(Schema):
    N = fields.Integer()
    diag_sum = BigInt()
    three_p_n = RatioField()
    equal = fields.Boolean()
    quoted = fields.Boolean()


class DiagonalSchema(Schema):
    seq = fields.String()
    sums = fields.List(BigInt())


class TriangleSchema(Schema):
    rule = fields.String()
    seed = fields.String()
    n = fields.Integer()
    rows = fields.List(fields.List(RatioField()))
    value = RatioField()


class ChromaticSchema(Schema):
    n = fields.Integer()
    k = fields.Integer()
    polynomial = fields.String()
    coefficients = fields.List(BigInt())
    eval = BigInt(allow_none=True)
    coeff = BigInt(allow_none=True)
    derive_at = BigInt(allow_none=True)


class VerificationCellSchema(Schema):
    family = fields.String()
    seq = fields.String()
    n = fields.Integer()
    k = fields.Integer()
    expected = fields.String()
    got = fields.String(allow_none=True)
    status = fields.String()


class VerificationRunSchema(Schema):
    id = fields.Integer()
    nmax = fields.Integer()
    kmax = fields.Integer()
    families = fields.List(fields.String())
    passed = fields.Boolean()
    summary = fields.Dict(allow_none=True)
    created_at = fields.DateTime()
    cells = fields.List(fields.Nested(VerificationCellSchema))


value_schema = ValueSchema()
table_schema = TableSchema()
diagonal_schema = DiagonalSchema()
diagonal_report_schema = DiagonalReportSchema()
triangle_schema = TriangleSchema()
chromatic_schema = ChromaticSchema()
verification_run_schema = VerificationRunSchema()
