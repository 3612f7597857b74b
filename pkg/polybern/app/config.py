"""Runtime settings read from ``POLYBERN_*`` environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

# polybern/app/config.py → polybern/app → polybern → project root
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
INSTANCE_DIR = PROJECT_ROOT / "instance"
FIXTURE_DIR = Path(__file__).resolve().parent / "data" / "oeis"

DEFAULT_SEARCH_BUDGET = 2 ** 26
DEFAULT_PERM_BUDGET = 10
DEFAULT_COLORING_BUDGET = 2 ** 22


@dataclass(frozen=True)
class Settings:
    oeis_base_url: str = "https://oeis.org"
    cache_dir: Path = INSTANCE_DIR / "oeis_cache"
    fixture_dir: Path = FIXTURE_DIR
    search_budget: int = DEFAULT_SEARCH_BUDGET
    perm_budget: int = DEFAULT_PERM_BUDGET
    coloring_budget: int = DEFAULT_COLORING_BUDGET
    database_uri: str = f"sqlite:///{(INSTANCE_DIR / 'polybern.db').as_posix()}"
    offline: bool = True

    def with_overrides(self, **changes) -> "Settings":
        """Return a copy with the non-None *changes* applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _int_env(env, name: str, default: int) -> int:
    raw = env.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def load_settings(env=None) -> Settings:
    """Build :class:`Settings` from *env* (defaults to ``os.environ``)."""
    env = os.environ if env is None else env
    defaults = Settings()
    cache_dir = env.get("POLYBERN_CACHE_DIR")
    return Settings(
        oeis_base_url=env.get("POLYBERN_OEIS_BASE_URL", defaults.oeis_base_url).rstrip("/"),
        cache_dir=Path(cache_dir) if cache_dir else defaults.cache_dir,
        fixture_dir=defaults.fixture_dir,
        search_budget=_int_env(env, "POLYBERN_SEARCH_BUDGET", defaults.search_budget),
        perm_budget=_int_env(env, "POLYBERN_PERM_BUDGET", defaults.perm_budget),
        coloring_budget=_int_env(env, "POLYBERN_COLORING_BUDGET", defaults.coloring_budget),
        database_uri=env.get("POLYBERN_DATABASE_URI", defaults.database_uri),
        offline=env.get("POLYBERN_OFFLINE", "1").strip().lower() not in ("0", "false", "no"),
    )
