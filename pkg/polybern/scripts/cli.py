"""Command-line front end.

Data goes to stdout (JSON, or CSV for ``table --format csv``); diagnostics go
to stderr.  Exit codes: 0 success, 1 verification mismatch, 2 usage or
domain error, 3 exhaustive-search budget exceeded.

Examples::

    python -m polybern.scripts.cli table --seq B --nmax 5 --kmax 5 --format csv
    python -m polybern.scripts.cli verify --nmax 3 --kmax 3 --jobs 4
    python -m polybern.scripts.cli conjecture --nmax 7
"""

from __future__ import annotations

# ---------------------------------------------------------------------------
#  Ensure the project root is on PYTHONPATH so that `import polybern.*` works
#  when the script is executed as a *file* (e.g. `python polybern/scripts/cli.py`).
# ---------------------------------------------------------------------------
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).resolve().parent.parent.parent))

import argparse
import json
import logging
from typing import Callable, Sequence, TextIO

import mpmath

from polybern.app import create_app
from polybern.app.api.schemas import (
    chromatic_schema, diagonal_report_schema, diagonal_schema, table_schema, triangle_schema,
)
from polybern.app.config import load_settings
from polybern.app.exceptions import BudgetExceededError, PolyBernoulliError
from polybern.app.services import (
    asymptotics, bijections, chromatic, diagonal, oeis_io, perm_enum, sequences, transforms,
    verification,
)

logger = logging.getLogger("polybern.cli")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(payload, out: TextIO) -> None:
    out.write(json.dumps(payload, indent=2) + "\n")


# ---------------------------------------------------------------------------
#  Subcommands
# ---------------------------------------------------------------------------

def cmd_table(args, out: TextIO) -> int:
    table = sequences.table(args.seq, args.nmax, args.kmax, args.method)
    if args.format == "csv":
        out.write(table.to_frame().to_csv())
    else:
        _emit(table_schema.dump({"label": table.label, "nmax": table.nmax, "kmax": table.kmax,
                                 "rows": table.as_ints()}), out)
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    report = verification.run_grid(args.nmax, args.kmax, args.families, jobs=args.jobs,
                                   perm_max=args.perm_max, verbose=args.verbose)
    identities = verification.run_identities(args.identities) if args.identities is not None else None
    payload = report.to_dict(include_cells=args.cells)
    if identities is not None:
        payload["identities"] = identities.to_dict()
    if args.store:
        app = create_app()
        with app.app_context():
            run = verification.store_run(report, identities)
            payload["stored_run"] = run.id
    _emit(payload, out)
    passed = report.passed and (identities is None or identities.passed)
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_bijections(args, out: TextIO) -> int:
    if not args.check:
        raise argparse.ArgumentTypeError("bijections needs --check")
    report = bijections.run_suite(args.max_size, args.matrix_size, args.max_cells)
    _emit(report.to_dict(), out)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_transform(args, out: TextIO) -> int:
    seed = transforms.parse_seed(args.seed, args.n + 1)
    rows = transforms.triangle(seed, args.n, args.rule)
    _emit(triangle_schema.dump({
        "rule": args.rule,
        "seed": args.seed,
        "n": args.n,
        "rows": [list(r.entries) for r in rows],
        "value": rows[-1][0],
    }), out)
    return EXIT_OK


def cmd_chromatic(args, out: TextIO) -> int:
    poly = chromatic.chr_bipartite(args.n, args.k)
    _emit(chromatic_schema.dump({
        "n": args.n,
        "k": args.k,
        "polynomial": str(poly),
        "coefficients": poly.poly.to_list(),
        "eval": poly(args.eval) if args.eval is not None else None,
        "coeff": poly.coefficient(args.coeff) if args.coeff is not None else None,
        "derive_at": poly.derivative_at(args.derive_at) if args.derive_at is not None else None,
    }), out)
    return EXIT_OK


def cmd_diagonal(args, out: TextIO) -> int:
    _emit(diagonal_schema.dump({"seq": args.seq, "sums": diagonal.diagonal_sums(args.seq, args.nmax)}), out)
    return EXIT_OK


def cmd_conjecture(args, out: TextIO) -> int:
    # a mismatch here is a finding, not a failure
    _emit(diagonal_report_schema.dump(diagonal.check_stephan(args.nmax), many=True), out)
    return EXIT_OK


def cmd_oeis(args, out: TextIO) -> int:
    settings = load_settings()
    if args.offline:
        settings = settings.with_overrides(offline=True)
    anums = list(oeis_io.KNOWN_SEQUENCES) if args.seq.lower() == "all" else [args.seq]
    reports = [oeis_io.compare_known(a, limit=args.limit, settings=settings, refresh=args.refresh)
               for a in anums]
    _emit([r.to_dict() for r in reports], out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def _family_listing(args) -> tuple[int, list]:
    budget = args.budget
    if args.family == "band":
        spec = perm_enum.BandSpec.preset(args.variant or "V", args.n, args.k)
        items = [list(p) for p in perm_enum.iter_band(spec, budget=budget)] if args.emit else None
        return perm_enum.count_band(spec, budget=budget), items
    if args.family == "excedance":
        variant = args.variant or "E"
        items = ([list(p) for p in perm_enum.iter_excedance_class(args.n, args.k, variant, budget=budget)]
                 if args.emit else None)
        return perm_enum.count_excedance_class(args.n, args.k, variant, budget=budget), items
    boundary = args.variant or "*,*"
    items = ([str(p) for p in perm_enum.iter_callan(args.n, args.k, boundary, budget=budget)]
             if args.emit else None)
    return perm_enum.count_callan(args.n, args.k, boundary, budget=budget), items


def cmd_enumerate(args, out: TextIO) -> int:
    count, items = _family_listing(args)
    payload = {"family": args.family, "variant": args.variant, "n": args.n, "k": args.k, "count": str(count)}
    if items is not None:
        payload["items"] = items
    _emit(payload, out)
    return EXIT_OK


def cmd_asymptotics(args, out: TextIO) -> int:
    payload = {
        "n": args.n,
        "d_ratio": mpmath.nstr(asymptotics.d_diagonal_ratio(args.n, args.form), 15),
        "c_ratio": mpmath.nstr(asymptotics.c_diagonal_ratio(args.n), 15),
        "form": args.form,
    }
    if args.trend is not None:
        payload["d_trend"] = asymptotics.trend(lambda m: asymptotics.d_diagonal_ratio(m, args.form),
                                               small=args.trend, large=args.n)
        payload["c_trend"] = asymptotics.trend(asymptotics.c_diagonal_ratio, small=args.trend, large=args.n)
    _emit(payload, out)
    return EXIT_OK


COMMANDS: dict[str, Callable] = {
    "table": cmd_table,
    "verify": cmd_verify,
    "bijections": cmd_bijections,
    "transform": cmd_transform,
    "chromatic": cmd_chromatic,
    "diagonal": cmd_diagonal,
    "conjecture": cmd_conjecture,
    "oeis": cmd_oeis,
    "enumerate": cmd_enumerate,
    "asymptotics": cmd_asymptotics,
}


# ---------------------------------------------------------------------------
#  CLI entry-point
# ---------------------------------------------------------------------------

def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polybern", description="Poly-Bernoulli numbers and their relatives")
    p.add_argument("--verbose", action="store_true", help="Log progress at INFO level on stderr")
    p.add_argument("--debug", action="store_true", help="Log at DEBUG level on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="Grid of B, C or D")
    t.add_argument("--seq", choices=("B", "C", "D"), default="B")
    t.add_argument("--nmax", type=_non_negative, default=5)
    t.add_argument("--kmax", type=_non_negative, default=5)
    t.add_argument("--method", choices=[m.value for m in sequences.MethodId], default="closed")
    t.add_argument("--format", choices=("csv", "json"), default="json")

    v = sub.add_parser("verify", help="Count every interpretation and compare with the formulas")
    v.add_argument("--nmax", type=_non_negative, default=3)
    v.add_argument("--kmax", type=_non_negative, default=3)
    v.add_argument("--families", default=None,
                   help=f"Comma-separated subset of {','.join(verification.ALL_FAMILIES)}")
    v.add_argument("--jobs", type=int, default=1, help="Worker processes (default 1)")
    v.add_argument("--perm-max", type=_non_negative, default=verification.DEFAULT_PERM_MAX,
                   help="Largest n+k for the permutation families (default 8)")
    v.add_argument("--identities", type=_non_negative, default=None, metavar="NMAX",
                   help="Also run the identity suite for n, k <= NMAX")
    v.add_argument("--cells", action="store_true", help="Include every cell in the report")
    v.add_argument("--store", action="store_true", help="Persist the run in the verification database")

    b = sub.add_parser("bijections", help="Exhaustive bijection suite")
    b.add_argument("--check", action="store_true")
    b.add_argument("--max-size", type=_non_negative, default=7, help="Largest n+k for Callan maps")
    b.add_argument("--matrix-size", type=_non_negative, default=3, help="Largest n, k for zig-zag and orientations")
    b.add_argument("--max-cells", type=_non_negative, default=12, help="Largest n*k for the orientation coding")

    tr = sub.add_parser("transform", help="AT / BT triangle of a seed")
    tr.add_argument("--rule", choices=("at", "bt"), default="at")
    tr.add_argument("--seed", default="bernoulli", help="bernoulli, pow:k or powplus:k")
    tr.add_argument("--n", type=_non_negative, required=True)

    c = sub.add_parser("chromatic", help="Chromatic polynomial of K_{n,k}")
    c.add_argument("--n", type=_non_negative, required=True)
    c.add_argument("--k", type=_non_negative, required=True)
    c.add_argument("--eval", type=int, default=None, help="Evaluate at q")
    c.add_argument("--coeff", type=_non_negative, default=None, help="Coefficient of q^d")
    c.add_argument("--derive-at", type=int, default=None, help="Derivative at q")

    d = sub.add_parser("diagonal", help="Diagonal sums of B or C")
    d.add_argument("--seq", choices=("B", "C"), default="B")
    d.add_argument("--nmax", type=_non_negative, default=7)

    cj = sub.add_parser("conjecture", help="Diagonal sums of B against 3·P_N")
    cj.add_argument("--nmax", type=_non_negative, default=7)

    o = sub.add_parser("oeis", help="Compare with OEIS b-files")
    o.add_argument("--seq", default="all", help="A099594, A098830, A136127 or all")
    o.add_argument("--offline", action="store_true", help="Never touch the network")
    o.add_argument("--refresh", action="store_true", help="Fetch live data and rewrite the cache")
    o.add_argument("--limit", type=_non_negative, default=None, help="Compare only the first terms")

    e = sub.add_parser("enumerate", help="Count (and list) a permutation family")
    e.add_argument("--family", choices=("band", "excedance", "callan"), required=True)
    e.add_argument("--variant", default=None,
                   help="band: V|Vstar|Vstarstar, excedance: E|Estar|Estarstar|WE_exact, callan: first,last")
    e.add_argument("--n", type=_non_negative, required=True)
    e.add_argument("--k", type=_non_negative, required=True)
    e.add_argument("--emit", action="store_true", help="List the members as JSON")
    e.add_argument("--budget", type=_non_negative, default=None, help="Largest n+k to enumerate")

    a = sub.add_parser("asymptotics", help="D(n,n) and C(n,n) against their asymptotic forms")
    a.add_argument("--n", type=_non_negative, default=40)
    a.add_argument("--form", choices=("corrected", "printed"), default="corrected")
    a.add_argument("--trend", type=_non_negative, default=None, metavar="SMALL",
                   help="Also compare with the ratio at SMALL")
    return p


def _configure_logging(args) -> None:
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Parse *argv*, run the subcommand and return the exit code."""
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _configure_logging(args)
    try:
        return COMMANDS[args.command](args, out)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PolyBernoulliError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
