"""OEIS b-files: parsing, fetching with a disk cache, and comparison with local values.

Three sequences are known here:

* A099594 the B(n, k) array read by antidiagonals
* A098830 Σ_{n+k=N} B(n, k), from N = 0
* A136127 Σ_{n+k=N} C(n, k), from N = 1

Lookups go cache first, then (offline) the bundled fixtures or (online) the
network.  Cache files are written to a temporary name and renamed into place.
"""

from __future__ import annotations

import logging
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable
from urllib.error import URLError
from urllib.request import urlopen

from ..config import Settings, load_settings
from ..exceptions import BFileParseError, DomainError, SequenceUnavailableError
from ..models.bfile import BFile
from .diagonal import diagonal_sum
from .sequences import SequenceId, value

logger = logging.getLogger(__name__)

Transport = Callable[[str], str]

HTTP_TIMEOUT = 30


# ---------------------------------------------------------------------------
#  Wire format
# ---------------------------------------------------------------------------

def parse_bfile(text: str, anum: str = "") -> BFile:
    """Parse "<index> <value>" lines; '#' comments and blank lines are skipped."""
    terms = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileParseError(line_number, raw)
        try:
            index, term = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileParseError(line_number, raw) from None
        if terms and index <= terms[-1][0]:
            raise BFileParseError(line_number, raw)
        terms.append((index, term))
    return BFile(anum, tuple(terms))


def serialize_bfile(bfile: BFile, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.extend(f"{i} {v}" for i, v in bfile.terms)
    return "\n".join(lines) + "\n"


_ANUM_RE = re.compile(r"^[Aa]?(\d{1,6})$")


def normalize_anum(anum: str) -> str:
    match = _ANUM_RE.match(anum.strip())
    if not match:
        raise DomainError(f"not an OEIS A-number: {anum!r}")
    return f"A{int(match.group(1)):06d}"


def bfile_url(anum: str, base_url: str) -> str:
    anum = normalize_anum(anum)
    return f"{base_url.rstrip('/')}/{anum}/b{anum[1:]}.txt"


# ---------------------------------------------------------------------------
#  Fetching
# ---------------------------------------------------------------------------

def urllib_transport(url: str) -> str:
    with urlopen(url, timeout=HTTP_TIMEOUT) as response:
        return response.read().decode("utf-8")


def _cache_path(settings: Settings, anum: str) -> Path:
    return Path(settings.cache_dir) / f"b{anum[1:]}.txt"


def _fixture_path(settings: Settings, anum: str) -> Path:
    return Path(settings.fixture_dir) / f"b{anum[1:]}.txt"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def fetch_bfile(anum: str, *, settings: Settings | None = None,
                transport: Transport | None = None, refresh: bool = False) -> BFile:
    """b-file for *anum* from the cache, the fixtures or the network.

    *refresh* skips the cache and always asks the network (even when the
    settings say offline); the answer then replaces the cache entry.
    """
    settings = settings or load_settings()
    anum = normalize_anum(anum)
    cache, fixture = _cache_path(settings, anum), _fixture_path(settings, anum)

    if not refresh and cache.exists():
        logger.info("cache hit for %s at %s", anum, cache)
        return parse_bfile(cache.read_text(encoding="utf-8"), anum)

    if settings.offline and not refresh:
        if fixture.exists():
            logger.info("reading bundled fixture for %s", anum)
            return parse_bfile(fixture.read_text(encoding="utf-8"), anum)
        raise SequenceUnavailableError(f"{anum}: offline and nothing cached")

    url = bfile_url(anum, settings.oeis_base_url)
    logger.info("fetching %s", url)
    try:
        text = (transport or urllib_transport)(url)
    except (URLError, OSError) as exc:
        logger.warning("fetching %s failed: %s", url, exc)
        if fixture.exists():
            return parse_bfile(fixture.read_text(encoding="utf-8"), anum)
        raise SequenceUnavailableError(f"{anum}: {exc}") from exc
    bfile = parse_bfile(text, anum)
    _write_atomic(cache, serialize_bfile(bfile))
    return bfile


# ---------------------------------------------------------------------------
#  Comparison with local values
# ---------------------------------------------------------------------------

@dataclass
class SequenceComparison:
    anum: str
    compared: int = 0
    mismatches: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.compared > 0 and not self.mismatches

    def to_dict(self) -> dict:
        return {
            "anum": self.anum,
            "compared": self.compared,
            "passed": self.passed,
            "mismatches": [
                {"index": i, "oeis": str(expected), "local": str(got)}
                for i, expected, got in self.mismatches
            ],
        }


def antidiagonal_flatten(entry: Callable[[int, int], int], count: int) -> list[int]:
    """First *count* entries of the array read by antidiagonals n + k = N.

    Within a diagonal n runs upward from 0, i.e. (0,N), (1,N-1), ..., (N,0).
    """
    out: list[int] = []
    N = 0
    while len(out) < count:
        for n in range(N + 1):
            if len(out) == count:
                break
            out.append(entry(n, N - n))
        N += 1
    return out


@dataclass(frozen=True)
class KnownSequence:
    anum: str
    description: str
    offset: int
    local: Callable[[int], list[int]]


def _b_antidiagonals(count: int) -> list[int]:
    return antidiagonal_flatten(lambda n, k: value(SequenceId.B, n, k), count)


def _b_diagonals(count: int) -> list[int]:
    return [diagonal_sum(SequenceId.B, N) for N in range(count)]


def _c_diagonals(count: int) -> list[int]:
    return [diagonal_sum(SequenceId.C, N) for N in range(1, count + 1)]


KNOWN_SEQUENCES = {
    "A099594": KnownSequence("A099594", "B(n,k) read by antidiagonals", 0, _b_antidiagonals),
    "A098830": KnownSequence("A098830", "diagonal sums of B", 0, _b_diagonals),
    "A136127": KnownSequence("A136127", "diagonal sums of C", 1, _c_diagonals),
}


def known_sequence(anum: str) -> KnownSequence:
    anum = normalize_anum(anum)
    if anum not in KNOWN_SEQUENCES:
        raise DomainError(f"no local counterpart for {anum}; known: {', '.join(KNOWN_SEQUENCES)}")
    return KNOWN_SEQUENCES[anum]


def compare_sequence(anum: str, local: list[int], offset: int = 0,
                     bfile: BFile | None = None, **fetch_kwargs) -> SequenceComparison:
    """Compare *local* (``local[0]`` is index *offset*) with the b-file terms it covers."""
    anum = normalize_anum(anum)
    bfile = bfile or fetch_bfile(anum, **fetch_kwargs)
    report = SequenceComparison(anum)
    for index, expected in bfile.terms:
        pos = index - offset
        if not 0 <= pos < len(local):
            continue
        report.compared += 1
        if local[pos] != expected:
            report.mismatches.append((index, expected, local[pos]))
    if report.mismatches:
        logger.warning("%s: %d of %d terms differ", anum, len(report.mismatches), report.compared)
    return report


def compare_known(anum: str, *, limit: int | None = None, **fetch_kwargs) -> SequenceComparison:
    """Compare one of :data:`KNOWN_SEQUENCES` over its b-file (or the first *limit* terms)."""
    seq = known_sequence(anum)
    bfile = fetch_bfile(seq.anum, **fetch_kwargs)
    if limit is not None:
        bfile = bfile.prefix(limit)
    count = max((i - seq.offset + 1 for i, _ in bfile.terms), default=0)
    return compare_sequence(seq.anum, seq.local(count), seq.offset, bfile=bfile)
