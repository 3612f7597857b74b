from __future__ import annotations

from flask_sqlalchemy import SQLAlchemy
from flask_marshmallow import Marshmallow
from pathlib import Path

from .config import load_settings

db = SQLAlchemy()
ma = Marshmallow()


def init_db(app, database_uri: str | None = None):
    """Bind the database to *app* and create the verification tables."""
    uri = database_uri or app.config.get('SQLALCHEMY_DATABASE_URI') or load_settings().database_uri

    # SQLite cannot create the file when its directory is missing
    if uri.startswith('sqlite:///') and uri != 'sqlite:///:memory:':
        Path(uri[len('sqlite:///'):]).parent.mkdir(parents=True, exist_ok=True)

    app.config['SQLALCHEMY_DATABASE_URI'] = uri
    app.config['SQLALCHEMY_TRACK_MODIFICATIONS'] = False
    db.init_app(app)
    ma.init_app(app)

    with app.app_context():
        # Model modules must be imported so their tables are in the metadata
        # before ``create_all``.
        from .models import verification  # noqa: F401 – imported for side-effect

        db.create_all()
