"""Command-line surface: compute, verify, and export everything the
library builds, in human, JSON, or CSV form.

Exit codes: 0 = success / all checks verified, 1 = a mathematical check
failed, 2 = usage error.  Rationals are always rendered exactly as
"num/den" (integers without the "/1"), so exactness survives the text
boundary.  The default output format can be set with the
RAMANUJAN_POPUC_FORMAT environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .closed_forms import cf_ramanujan_2p, cf_ramanujan_anti2p, cf_ramanujan_prime
from .duality import build_dual_pair, sturmian_from_charpoly, verify_weights
from .errors import (
    DegreeBoundError,
    DuplicateOrderError,
    InsufficientMomentsError,
    InvalidModulusError,
    NonPrimeError,
    PopucError,
)
from .errors import InternalInconsistencyError
from .number_theory import is_odd_prime, ramanujan_table
from .opuc_core import moments_from_power_sums, toeplitz_det
from .polynomials import KroneckerSpec, kronecker_poly

USAGE_ERRORS = (
    InvalidModulusError,
    DuplicateOrderError,
    NonPrimeError,
    DegreeBoundError,
    InsufficientMomentsError,
)

FORMATS = ("table", "json", "csv")


def _default_format() -> str:
    fmt = os.environ.get("RAMANUJAN_POPUC_FORMAT", "table")
    return fmt if fmt in FORMATS else "table"


def _parse_kronecker(text: str) -> KroneckerSpec:
    try:
        orders = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise InvalidModulusError(f"cannot parse order list {text!r}") from exc
    return KroneckerSpec(orders)


def _spec_from_args(args) -> KroneckerSpec:
    if (args.m is None) == (args.kronecker is None):
        raise InvalidModulusError("exactly one of --m / --kronecker is required")
    if args.m is not None:
        if args.m < 1:
            raise InvalidModulusError(f"--m must be >= 1, got {args.m}")
        return KroneckerSpec([args.m])
    return _parse_kronecker(args.kronecker)


def _emit_csv(rows: list[dict], header: list[str]) -> None:
    import csv

    writer = csv.DictWriter(sys.stdout, fieldnames=header)
    writer.writeheader()
    writer.writerows(rows)


def _system_csv_rows(system) -> list[dict]:
    """One row per (series, n, k, value); polynomials expand to one row
    per coefficient, scalar series leave k empty."""
    rows = []
    for n, phi in enumerate(system.phis):
        for k, c in enumerate(phi.coeffs):
            rows.append({"series": "phi", "n": n, "k": k, "value": str(c)})
    for series, values in (
        ("verblunsky", system.verblunsky.to_json_list()),
        ("h", [str(v) for v in system.h]),
        ("delta", [str(v) for v in system.delta]),
        ("moment", system.moments.to_json_list()),
    ):
        for n, v in enumerate(values):
            rows.append({"series": series, "n": n, "k": "", "value": v})
    return rows


def _print_system_table(system) -> None:
    print(f"family     : {system.family}")
    print(f"N          : {system.n_max}")
    print(f"verblunsky : {'  '.join(system.verblunsky.to_json_list())}")
    print(f"h          : {'  '.join(str(v) for v in system.h)}")
    print(f"delta      : {'  '.join(str(v) for v in system.delta)}")
    print(f"moments    : {'  '.join(system.moments.to_json_list())}")
    for n, phi in enumerate(system.phis):
        print(f"Phi_{n:<3}    : {phi}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_sums(args) -> int:
    if args.m < 1:
        raise InvalidModulusError(f"--m must be >= 1, got {args.m}")
    if args.n_max < 0:
        raise InvalidModulusError(f"--n-max must be >= 0, got {args.n_max}")
    table = ramanujan_table(args.m, args.n_max)
    if args.format == "json":
        print(json.dumps(table.to_json_dict()))
    elif args.format == "csv":
        _emit_csv(
            [{"n": n, "value": v} for n, v in enumerate(table.values)],
            ["n", "value"],
        )
    else:
        print(" ".join(str(v) for v in table.values))
    return 0


def _build_system(args):
    spec = _spec_from_args(args)
    if args.family == "sturmian":
        return sturmian_from_charpoly(
            kronecker_poly(spec), family=f"sturmian:{spec.label}", paranoid=args.paranoid
        )
    from .duality import ramanujan_from_charpoly

    return ramanujan_from_charpoly(spec, paranoid=args.paranoid)


def cmd_popuc(args) -> int:
    system = _build_system(args)
    if args.format == "json":
        print(json.dumps(system.to_json_dict()))
    elif args.format == "csv":
        _emit_csv(_system_csv_rows(system), ["series", "n", "k", "value"])
    else:
        _print_system_table(system)
    return 0


def cmd_dual(args) -> int:
    spec = _spec_from_args(args)
    pair = build_dual_pair(spec)
    report = verify_weights(pair, tol=args.precision, digits=args.digits)
    if args.format == "json":
        payload = pair.to_json_dict()
        payload["weights"] = report.to_json_dict()
        print(json.dumps(payload))
    elif args.format == "csv":
        rows = [
            {
                "root_index": i,
                "root_re": float(r["root"].real),
                "root_im": float(r["root"].imag),
                "equal_mass_residual": r["equal_mass_residual"],
                "product_residual": r["product_residual"],
                "two_route_residual": r["two_route_residual"],
                "sturmian_positive": r["sturmian_positive"],
            }
            for i, r in enumerate(report.rows)
        ]
        _emit_csv(
            rows,
            [
                "root_index",
                "root_re",
                "root_im",
                "equal_mass_residual",
                "product_residual",
                "two_route_residual",
                "sturmian_positive",
            ],
        )
    else:
        print(f"spec             : {{{spec.label}}}")
        print(f"charpoly         : {pair.charpoly}")
        print(f"ramanujan a      : {'  '.join(pair.ramanujan.verblunsky.to_json_list())}")
        print(f"sturmian  a      : {'  '.join(pair.sturmian.verblunsky.to_json_list())}")
        for name, ok in pair.checks.items():
            print(f"exact {name:<22}: {'ok' if ok else 'FAIL'}")
        print(
            f"weights          : max residual {report.max_residual:.3e} "
            f"over {len(report.rows)} roots (tol {report.tol:g})"
        )
    return 0


def cmd_explore(args) -> int:
    if not is_odd_prime(args.p) or not is_odd_prime(args.q):
        raise NonPrimeError(f"--p and --q must be odd primes, got {args.p}, {args.q}")
    if args.p == args.q:
        raise NonPrimeError("--p and --q must be distinct")
    spec = KroneckerSpec([args.p * args.q])
    from .duality import ramanujan_from_charpoly

    system = ramanujan_from_charpoly(spec)
    note = "exploratory - no closed form known"
    if args.format == "json":
        payload = {
            "p": args.p,
            "q": args.q,
            "M": args.p * args.q,
            "verblunsky": system.verblunsky.to_json_list(),
            "note": note,
        }
        print(json.dumps(payload))
    elif args.format == "csv":
        _emit_csv(
            [
                {"n": n, "a": v}
                for n, v in enumerate(system.verblunsky.to_json_list())
            ],
            ["n", "a"],
        )
    else:
        print(f"M = {args.p} * {args.q} = {args.p * args.q}   ({note})")
        print(" ".join(system.verblunsky.to_json_list()))
    return 0


# ---------------------------------------------------------------------------
# Batch verification
# ---------------------------------------------------------------------------


def _check_subject(spec: KroneckerSpec, closed_form=None) -> tuple[bool, str]:
    """Run the invariant suite over one spectral spec.  Returns (ok,
    detail); detail names the first failed check."""
    try:
        pair = build_dual_pair(spec)
        verify_weights(pair, tol=1e-10)
        power = moments_from_power_sums(pair.charpoly, spec.total_degree)
        if power.sigma != pair.ramanujan.moments.sigma:
            return False, "power-sum moments disagree with Ramanujan-sum moments"
        n2 = spec.total_degree + 1
        extended = moments_from_power_sums(pair.charpoly, n2)
        if toeplitz_det(extended, n2) != 0:
            return False, f"Delta_{n2} != 0"
        eng = pair.ramanujan
        if closed_form is not None and (
            closed_form.phis != eng.phis
            or closed_form.verblunsky != eng.verblunsky
            or closed_form.h != eng.h
            or closed_form.delta != eng.delta
            or closed_form.moments.sigma != eng.moments.sigma
        ):
            return False, "closed form disagrees with engine"
    except PopucError as exc:
        return False, f"{type(exc).__name__}: {exc}"
    return True, "ok"


def cmd_verify(args) -> int:
    if args.max_m < 1:
        raise InvalidModulusError(f"--max-m must be >= 1, got {args.max_m}")
    subjects: list[tuple[str, KroneckerSpec, object]] = []
    fams = args.families
    if fams in ("prime", "all"):
        for p in range(3, args.max_m + 1):
            if is_odd_prime(p):
                subjects.append((f"prime M={p}", KroneckerSpec([p]), cf_ramanujan_prime(p)))
    if fams in ("2p", "all"):
        for p in range(3, args.max_m // 2 + 1):
            if is_odd_prime(p):
                subjects.append((f"2p M={2 * p}", KroneckerSpec([2 * p]), cf_ramanujan_2p(p)))
    if fams in ("anti2p", "all"):
        for p in range(3, args.max_m // 2 + 1):
            if is_odd_prime(p):
                subjects.append(
                    (f"anti-2p p={p}", KroneckerSpec([1, 2, p]), cf_ramanujan_anti2p(p))
                )
    if fams in ("kronecker-enum", "all"):
        from itertools import combinations

        top = min(args.max_m, 12)
        for size in (1, 2, 3):
            for orders in combinations(range(1, top + 1), size):
                subjects.append((f"kronecker {{{','.join(map(str, orders))}}}",
                                 KroneckerSpec(orders), None))

    failures = 0
    for label, spec, closed in sorted(subjects, key=lambda s: (s[1].total_degree, s[0])):
        ok, detail = _check_subject(spec, closed)
        print(f"{'PASS' if ok else 'FAIL'}  {label:<28} {'' if ok else detail}".rstrip())
        if not ok:
            failures += 1
    print(f"{len(subjects) - failures}/{len(subjects)} verified")
    return 1 if failures else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramanujan-popuc",
        description=(
            "Exact construction of finite para-orthogonal polynomial families on "
            "the unit circle from Ramanujan trigonometric sums, their Sturmian "
            "mirror duals, and batch verification of every identity."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format",
            choices=FORMATS,
            default=_default_format(),
            help="output format (default from RAMANUJAN_POPUC_FORMAT, else table)",
        )

    p_sums = sub.add_parser("sums", help="Ramanujan sums c_M(0..L)")
    p_sums.add_argument("--m", type=int, required=True)
    p_sums.add_argument("--n-max", type=int, required=True)
    add_format(p_sums)
    p_sums.set_defaults(func=cmd_sums)

    p_popuc = sub.add_parser("popuc", help="build one para-orthogonal system")
    p_popuc.add_argument("--m", type=int, help="cyclotomic order M")
    p_popuc.add_argument("--kronecker", help="comma-separated distinct orders, e.g. 1,2,3")
    p_popuc.add_argument("--family", choices=("ramanujan", "sturmian"), default="ramanujan")
    p_popuc.add_argument(
        "--paranoid",
        action="store_true",
        help="cross-check every rung against the bordered-determinant formula",
    )
    add_format(p_popuc)
    p_popuc.set_defaults(func=cmd_popuc)

    p_dual = sub.add_parser("dual", help="build a mirror-dual pair and verify it")
    p_dual.add_argument("--m", type=int)
    p_dual.add_argument("--kronecker")
    p_dual.add_argument(
        "--precision",
        type=float,
        default=1e-12,
        help="tolerance for the floating-point weight checks (default 1e-12)",
    )
    p_dual.add_argument(
        "--digits",
        type=int,
        default=None,
        help="work at this many significant digits (mpmath) instead of doubles",
    )
    add_format(p_dual)
    p_dual.set_defaults(func=cmd_dual)

    p_verify = sub.add_parser("verify", help="sweep families and run the invariant suite")
    p_verify.add_argument("--max-m", type=int, required=True)
    p_verify.add_argument(
        "--families",
        choices=("all", "prime", "2p", "anti2p", "kronecker-enum"),
        default="all",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_explore = sub.add_parser(
        "explore", help="exact coefficients for M = p*q (no assertions)"
    )
    p_explore.add_argument("--p", type=int, required=True)
    p_explore.add_argument("--q", type=int, required=True)
    add_format(p_explore)
    p_explore.set_defaults(func=cmd_explore)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1
    except PopucError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
