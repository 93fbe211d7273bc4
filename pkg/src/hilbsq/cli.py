"""Command-line front end.

A thin client over the report builders: every subcommand maps to one
builder (and to one endpoint of the HTTP service; pass ``--server`` to
send the request there instead of computing in-process).

Exit codes: 0 all checks pass, 1 usage error, 2 check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import k3pic, reports

USAGE_ERROR = 1
CHECK_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="hilbsq",
        description=(
            "Exact-arithmetic reports on Pell equations, integral lattices "
            "and involutions of Hilbert squares of K3 surfaces."
        ),
    )
    parser.add_argument(
        "--json", action="store_true", help="emit the report as JSON"
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="POST the request to a running hilbsq service instead of "
        "computing locally",
    )
    parser.add_argument(
        "--coeff-bound",
        type=int,
        default=None,
        help="enumeration safety bound (default: HILBSQ_COEFF_BOUND or 500)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", help="solve x^2 - d*y^2 = m")
    p.add_argument("d", type=int)
    p.add_argument("m", type=int)

    p = sub.add_parser(
        "bcns", help="square-2 class existence for a degree-2t polarization"
    )
    p.add_argument("t", type=int)

    p = sub.add_parser("family", help="admissible degree families")
    p.add_argument("name", choices=["A", "B"])
    p.add_argument("bound", type=int)

    p = sub.add_parser(
        "beauville", help="involution actions and conjugated invariant lines"
    )
    p.add_argument("n", type=int)

    p = sub.add_parser(
        "theorem2",
        help="rank-2 invariant lattice of the conjugated involution",
    )
    p.add_argument("n", type=int)

    p = sub.add_parser("lattice-info", help="invariants of a named lattice")
    p.add_argument("lattice", help="U, E8, E7, E8(-1), E7(-1), L23, Q<n>, "
                   "NS(Q<n>) or a JSON gram-file path")

    p = sub.add_parser("verify-all", help="run the full verification battery")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--sn-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _coeff_bound(args) -> int:
    if args.coeff_bound is not None:
        return args.coeff_bound
    env = os.environ.get("HILBSQ_COEFF_BOUND")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"HILBSQ_COEFF_BOUND must be an integer: {env!r}") from exc
    return k3pic.DEFAULT_COEFF_BOUND


def _endpoint_payload(args, bound: int) -> tuple[str, dict]:
    if args.command == "pell":
        return "pell", {"d": str(args.d), "m": str(args.m)}
    if args.command == "bcns":
        return "bcns", {"t": str(args.t)}
    if args.command == "family":
        return "family", {"family": args.name, "bound": str(args.bound)}
    if args.command == "beauville":
        return "beauville", {"n": str(args.n)}
    if args.command == "theorem2":
        return "theorem2", {"n": str(args.n)}
    if args.command == "lattice-info":
        return "lattice-info", {"name": args.lattice}
    return "verify-all", {
        "n_max": str(args.n_max),
        "k_max": str(args.k_max),
        "sn_max": str(args.sn_max),
        "seed": str(args.seed),
        "coeff_bound": str(bound),
    }


def _build_local(args, bound: int) -> reports.Report:
    if args.command == "pell":
        return reports.pell_report(args.d, args.m)
    if args.command == "bcns":
        return reports.bcns_report(args.t)
    if args.command == "family":
        return reports.family_report(args.name, args.bound)
    if args.command == "beauville":
        return reports.beauville_report(args.n)
    if args.command == "theorem2":
        return reports.theorem2_report(args.n)
    if args.command == "lattice-info":
        return reports.lattice_info_report(args.lattice)
    return reports.verify_all_report(
        n_max=args.n_max,
        k_max=args.k_max,
        sn_max=args.sn_max,
        seed=args.seed,
        coeff_bound=bound,
    )


def _fetch_remote(server: str, endpoint: str, payload: dict) -> reports.Report:
    import httpx

    url = server.rstrip("/") + "/" + endpoint
    response = httpx.post(url, json=payload, timeout=300.0)
    if response.status_code >= 400:
        raise ValueError(f"service error {response.status_code}: {response.text}")
    return reports.Report.from_dict(response.json())


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        bound = _coeff_bound(args)
        endpoint, payload = _endpoint_payload(args, bound)
        if args.server:
            report = _fetch_remote(args.server, endpoint, payload)
        else:
            report = _build_local(args, bound)
    except ValueError as exc:
        print(f"hilbsq: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(report.to_json() if args.json else report.render_text())
    return CHECK_FAILURE if report.has_failure else 0


if __name__ == "__main__":
    sys.exit(main())
