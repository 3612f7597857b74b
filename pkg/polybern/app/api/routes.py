from flask import Blueprint, request, jsonify
from marshmallow import ValidationError

from ..database import db
from ..exceptions import BudgetExceededError, PolyBernoulliError
from ..models.verification import VerificationRun
from ..services import diagonal, sequences
from .schemas import (
    ConjectureQuerySchema, DiagonalQuerySchema, TableQuerySchema, ValueQuerySchema,
    diagonal_report_schema, diagonal_schema, table_schema, value_schema, verification_run_schema,
)

api_bp = Blueprint('api', __name__)

# Routes that could trigger exhaustive enumeration are kept small
MAX_ENUMERATION_CELLS = 16


def _args(schema):
    """Load query arguments through *schema*; errors become HTTP 400."""
    return schema().load(request.args)


def _guard_enumeration(method, nmax: int, kmax: int) -> None:
    """Refuse interpretation methods on grids larger than MAX_ENUMERATION_CELLS."""
    cells = (nmax + 1) * (kmax + 1)
    if method in sequences.INTERPRETATION_METHODS and cells > MAX_ENUMERATION_CELLS:
        raise BudgetExceededError('API enumeration cells', MAX_ENUMERATION_CELLS, cells)


@api_bp.errorhandler(ValidationError)
def handle_validation_error(error):
    return jsonify({'error': error.messages}), 400


@api_bp.errorhandler(BudgetExceededError)
def handle_budget_error(error):
    return jsonify({'error': str(error)}), 422


@api_bp.errorhandler(PolyBernoulliError)
def handle_domain_error(error):
    return jsonify({'error': str(error)}), 400


# -------------------------------------------------------------------------
# Sequence values
# -------------------------------------------------------------------------

@api_bp.route('/table', methods=['GET'])
def get_table():
    """Grid of B, C or D for 0 ≤ n ≤ nmax, 0 ≤ k ≤ kmax."""
    args = _args(TableQuerySchema)
    method = sequences.method_id(args['method'])
    _guard_enumeration(method, args['nmax'], args['kmax'])
    table = sequences.table(args['seq'], args['nmax'], args['kmax'], method)
    return jsonify(table_schema.dump({
        'label': table.label,
        'nmax': table.nmax,
        'kmax': table.kmax,
        'rows': table.as_ints(),
    }))


@api_bp.route('/value/<seq>/<int:n>/<int:k>', methods=['GET'])
def get_value(seq, n, k):
    """Single value through any supported method."""
    args = _args(ValueQuerySchema)
    method = sequences.method_id(args['method'])
    _guard_enumeration(method, n, k)
    result = sequences.value(seq, n, k, method)
    return jsonify(value_schema.dump({
        'seq': sequences.sequence_id(seq).value,
        'n': n,
        'k': k,
        'method': method.value,
        'value': result,
    }))


# -------------------------------------------------------------------------
# Diagonals
# -------------------------------------------------------------------------

@api_bp.route('/diagonal', methods=['GET'])
def get_diagonal():
    args = _args(DiagonalQuerySchema)
    return jsonify(diagonal_schema.dump({
        'seq': args['seq'],
        'sums': diagonal.diagonal_sums(args['seq'], args['nmax']),
    }))


@api_bp.route('/conjecture', methods=['GET'])
def get_conjecture():
    """Diagonal sums of B next to 3·P_N for N = 0..nmax."""
    args = _args(ConjectureQuerySchema)
    reports = diagonal.check_stephan(args['nmax'])
    return jsonify(diagonal_report_schema.dump(reports, many=True))


# -------------------------------------------------------------------------
# Stored verification runs
# -------------------------------------------------------------------------

@api_bp.route('/verification/latest', methods=['GET'])
def get_latest_verification():
    run = db.session.execute(
        db.select(VerificationRun).order_by(VerificationRun.id.desc()).limit(1)
    ).scalar_one_or_none()
    if run is None:
        return jsonify({'error': 'No verification run stored'}), 404
    return jsonify(verification_run_schema.dump(run))
