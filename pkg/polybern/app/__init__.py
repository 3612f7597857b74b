from __future__ import annotations

from flask import Flask, jsonify
from flask_cors import CORS

from .database import init_db
from .api.routes import api_bp


def create_app(config: dict | None = None):
    """Create and configure the Flask application.

    *config* entries are applied before the database is bound, so tests can
    pass ``SQLALCHEMY_DATABASE_URI``.
    """
    app = Flask(__name__)
    if config:
        app.config.update(config)
    CORS(app)

    # Initialize database
    init_db(app)

    # Register blueprints
    app.register_blueprint(api_bp, url_prefix='/api')

    @app.route('/')
    def index():
        return jsonify({
            'name': 'polybern',
            'endpoints': sorted(str(rule) for rule in app.url_map.iter_rules() if str(rule).startswith('/api')),
        })

    return app
