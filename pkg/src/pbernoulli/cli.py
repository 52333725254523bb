"""Command-line interface: ``compute``, ``poly``, ``verify`` and ``table``.

Exit codes: 0 success, 1 verification counterexample, 2 usage or
environment error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from .combinatorics import eulerian_poly, r_stirling2, stirling2
from .config import load_defaults
from .exact_core import rational, rational_to_wire
from .identities import (
    BoundsError,
    GridBounds,
    UnknownIdentityError,
    check_bounds,
    get_identity,
    list_identities,
    suite_passed,
    verify_all,
)
from .sequences import (
    Route,
    alt_binom_reciprocal_sum,
    bernoulli_number,
    bernoulli_poly,
    faulhaber_sum,
    geometric_poly,
    geometric_poly_two_var,
    p_bernoulli_number,
    p_bernoulli_poly,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} {args.kind} requires {', '.join(missing)}")


def _nonneg(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(value: str) -> int:
    v = _nonneg(value)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


# -- subcommands -------------------------------------------------------------


def cmd_compute(args, out) -> int:
    kind = args.kind
    _require(args, "n")
    if kind == "bernoulli":
        value = bernoulli_number(args.n)
    elif kind == "pbernoulli":
        _require(args, "p")
        value = p_bernoulli_number((args.n, args.p), args.route or Route.RECURRENCE)
    elif kind == "geometric-at":
        _require(args, "y")
        value = geometric_poly(args.n)(rational(args.y))
    elif kind == "faulhaber":
        _require(args, "m")
        value = faulhaber_sum(args.n, args.m)
    else:  # altsum
        _require(args, "p")
        value = alt_binom_reciprocal_sum(args.n, args.p, args.route or "direct")
    out.write(rational_to_wire(value) + "\n")
    return EXIT_OK


def cmd_poly(args, out) -> int:
    kind = args.kind
    _require(args, "n")
    var = "x"
    if kind == "bernoulli":
        poly = bernoulli_poly(args.n)
    elif kind == "pbernoulli":
        _require(args, "p")
        poly = p_bernoulli_poly((args.n, args.p))
    elif kind == "geometric":
        poly, var = geometric_poly(args.n), "y"
    elif kind == "geometric2":
        poly = geometric_poly_two_var(args.n)
    else:  # eulerian
        poly, var = eulerian_poly(args.n), "y"
    if args.format == "json":
        out.write(json.dumps(poly.to_wire()) + "\n")
    elif kind == "geometric2":
        out.write(poly.pretty() + "\n")
    else:
        out.write(poly.pretty(var) + "\n")
    return EXIT_OK


def _split_ids(values: Sequence[str] | None) -> list[str]:
    ids: list[str] = []
    for v in values or ():
        ids.extend(s for s in v.split(",") if s)
    return ids


def _format_witness(c) -> str:
    params = " ".join(f"{k}={v}" for k, v in c.params.items())
    lhs, rhs = c.to_dict()["lhs"], c.to_dict()["rhs"]
    return f"    witness {params}: lhs={json.dumps(lhs)} rhs={json.dumps(rhs)}"


def cmd_verify(args, out) -> int:
    requested = _split_ids(args.ids)
    known = {d.id for d in list_identities()}
    if not requested or "all" in requested:
        ids = sorted(known)
        strict = False
    else:
        ids = requested
        strict = True
    expect_fail = set(_split_ids(args.expect_fail))
    for id in ids + sorted(expect_fail):
        if id not in known:
            raise UsageError(f"unknown identity id: {id}")

    bounds = GridBounds(args.n_max, args.p_max, args.m_max)
    if strict:
        for id in ids:
            check_bounds(get_identity(id), bounds)

    reports = verify_all(bounds, expect_fail, ids=ids, cap=args.cap, jobs=args.jobs)
    width = max(len(r.id) for r in reports)
    for r in reports:
        if r.vacuous:
            status = "VACUOUS"
        else:
            status = r.outcome.upper()
        if r.expected_fail:
            status += " (expected fail)"
        out.write(f"{r.id:<{width}}  {r.cases_checked:>5} cases  {status}\n")
        for c in r.counterexamples:
            out.write(_format_witness(c) + "\n")
    ok = suite_passed(reports)
    out.write(f"overall: {'OK' if ok else 'FAILED'}\n")

    if args.out:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "bounds": bounds.to_dict(),
            "expected_fail": sorted(expect_fail),
            "overall": "success" if ok else "failure",
            "reports": [r.to_dict() for r in reports],
        }
        try:
            with open(args.out, "w") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def table_rows(kind: str, n_max: int, p_max: int | None = None, r: int | None = None):
    """Header and rows for ``cmd_table``, values as canonical text."""
    if kind == "pbernoulli-numbers":
        header = ["n", "p", "value"]
        rows = [
            [n, p, rational_to_wire(p_bernoulli_number((n, p)))]
            for n in range(n_max + 1)
            for p in range(p_max + 1)
        ]
    elif kind == "stirling":
        header = ["n", "k", "value"]
        rows = [[n, k, str(stirling2(n, k))] for n in range(n_max + 1) for k in range(n + 1)]
    else:
        header = ["n", "k", "value"]
        rows = [
            [n, k, str(r_stirling2(n, k, r))] for n in range(r, n_max + 1) for k in range(n + 1)
        ]
    return header, rows


def cmd_table(args, out) -> int:
    if args.kind == "pbernoulli-numbers":
        _require(args, "p_max")
    elif args.kind == "r-stirling":
        _require(args, "r")
    header, rows = table_rows(args.kind, args.n_max, args.p_max, args.r)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps([dict(zip(header, row)) for row in rows], indent=1) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        out.write(text)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _default_jobs() -> int:
    env = os.environ.get("PBERN_JOBS")
    if env is None:
        return 1
    try:
        return _positive(env)
    except argparse.ArgumentTypeError:
        raise UsageError(f"PBERN_JOBS must be a positive integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    defaults = load_defaults()
    bounds = defaults["bounds"]
    parser = argparse.ArgumentParser(
        prog="pbernoulli",
        description="Exact p-Bernoulli numbers, geometric polynomials and identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print one exact value")
    p.add_argument("kind", choices=["bernoulli", "pbernoulli", "geometric-at", "faulhaber", "altsum"])
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--p", type=_nonneg)
    p.add_argument("--m", type=_nonneg)
    p.add_argument("--y", help="evaluation point for geometric-at, e.g. 1 or --y=-1/2")
    p.add_argument(
        "--route",
        choices=[r.value for r in Route] + ["direct", "closed-form"],
        help="pbernoulli: recurrence (default) or an explicit route; altsum: direct or closed-form",
    )

    p = sub.add_parser("poly", help="print a polynomial")
    p.add_argument("kind", choices=["bernoulli", "pbernoulli", "geometric", "geometric2", "eulerian"])
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--p", type=_nonneg)
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")

    p = sub.add_parser("verify", help="check registered identities over a parameter grid")
    p.add_argument("ids", nargs="*", help="identity ids, or 'all' (default)")
    p.add_argument("--n-max", type=_nonneg, default=bounds["n_max"])
    p.add_argument("--p-max", type=_nonneg, default=bounds["p_max"])
    p.add_argument("--m-max", type=_nonneg, default=bounds["m_max"])
    p.add_argument("--jobs", type=_positive, default=None, help="worker processes (env PBERN_JOBS)")
    p.add_argument("--cap", type=_nonneg, default=defaults["counterexample_cap"],
                   help="max counterexamples kept per identity")
    p.add_argument("--out", help="write full JSON reports here")
    p.add_argument("--expect-fail", action="append", metavar="ID",
                   help="identity expected to fail (repeatable or comma-separated)")
    p.add_argument("--list", action="store_true", help="list registered identities and exit")

    p = sub.add_parser("table", help="export a table as CSV or JSON")
    p.add_argument("kind", choices=["pbernoulli-numbers", "stirling", "r-stirling"])
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--p-max", type=_nonneg)
    p.add_argument("--r", type=_nonneg)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    return parser


def _list_identities(out) -> int:
    for d in list_identities():
        params = ", ".join(f"{p.name}>={p.minimum}" for p in d.parameters)
        flag = "  [expected fail]" if d.expected_fail else ""
        out.write(f"{d.id}  ({params})  {d.source}{flag}\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "verify":
            if args.list:
                return _list_identities(out)
            if args.jobs is None:
                args.jobs = _default_jobs()
            return cmd_verify(args, out)
        return {"compute": cmd_compute, "poly": cmd_poly, "table": cmd_table}[args.command](args, out)
    except (UsageError, UnknownIdentityError, BoundsError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownIdentityError) else str(exc)
        print(f"pbernoulli: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
