from polybern.app import create_app
from polybern.app.database import db
from polybern.app.services.verification import run_grid, store_run


def init_database(seed: bool = False):
    app = create_app()
    with app.app_context():
        db.create_all()
        if seed:
            # a small grid so /api/verification/latest has something to show
            store_run(run_grid(3, 3))
        print("Database initialized successfully!")


if __name__ == "__main__":
    import sys
    init_database(seed="--seed" in sys.argv)
