"""Command-line front end.

Subcommands: census, predict, verify, quivers, shapes, subalgebras.
Configuration precedence is flags over FCENSUS_* environment variables
over built-in defaults.  Exit codes: 0 success, 1 verification failure,
2 usage error (argparse default), 3 work-cap refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import census as census_mod
from . import formulas, quivers, shapes, subalgebras, verify
from .errors import FcensusError, WorkCapExceeded

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_WORK_CAP = 3


def _env_int(name: str, default: int | None) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


def _write_output(text: str, out_path: str | None) -> None:
    if out_path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_census(args) -> int:
    workers = args.workers if args.workers is not None else _env_int("FCENSUS_WORKERS", 1)
    work_cap = args.work_cap if args.work_cap is not None else _env_int("FCENSUS_WORK_CAP", None)
    try:
        report = census_mod.census(
            args.p,
            args.e,
            args.n,
            strata=args.strata,
            workers=workers,
            chunk_size=args.chunk_size,
            work_cap=work_cap,
        )
    except WorkCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WORK_CAP
    if args.out == "csv":
        _write_output(report.to_csv(), args.out_file)
    else:
        _write_output(report.to_json(), args.out_file)
    return EXIT_OK


def _cmd_predict(args) -> int:
    if args.class_tag == "X_n2_exact":
        if args.q is None:
            print("error: --q is required for X_n2_exact", file=sys.stderr)
            return EXIT_USAGE
        value = formulas.exact_X_n2(args.p, args.q)
        _write_output(
            json.dumps(
                {"class": args.class_tag, "p": args.p, "q": args.q, "value": str(value)},
                sort_keys=True,
            ),
            args.out_file,
        )
        return EXIT_OK
    if args.n is None:
        print("error: --n is required for leading terms", file=sys.stderr)
        return EXIT_USAGE
    lt = formulas.leading_term(args.class_tag, args.p, args.n)
    _write_output(
        json.dumps(
            {
                "class": lt.class_tag,
                "p": args.p,
                "n": args.n,
                "coefficient": str(lt.coefficient),
                "exponent": lt.exponent,
            },
            sort_keys=True,
        ),
        args.out_file,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    random.seed(args.seed)
    outcomes = verify.run_suite(args.suite)
    lines = [json.dumps(o.to_json_dict(), sort_keys=True, default=str) for o in outcomes]
    _write_output("\n".join(lines), args.out)
    failed = any(o.status == "fail" for o in outcomes)
    return EXIT_VERIFY_FAIL if failed else EXIT_OK


def _cmd_quivers(args) -> int:
    if args.maximizers:
        mx, cls = quivers.maximizers(args.n)
        payload = {
            "n": args.n,
            "max_dim": mx,
            "quivers": [[list(r) for r in Q.mult] for Q in cls],
        }
    else:
        cls = quivers.enumerate_bal(args.n)
        payload = {
            "n": args.n,
            "count": len(cls),
            "quivers": [[list(r) for r in Q.mult] for Q in cls],
        }
    _write_output(json.dumps(payload, sort_keys=True), args.out_file)
    return EXIT_OK


def _cmd_shapes(args) -> int:
    if args.maximizers:
        mx, cls = shapes.optimal_shapes(args.n)
        payload = {
            "n": args.n,
            "max_dim": mx,
            "shapes": [[list(p) for p in S] for S in cls],
        }
    else:
        cls = shapes.enumerate_shapes(args.n)
        payload = {
            "n": args.n,
            "count": len(cls),
            "shapes": [[list(p) for p in S] for S in cls],
        }
    _write_output(json.dumps(payload, sort_keys=True), args.out_file)
    return EXIT_OK


def _cmd_subalgebras(args) -> int:
    try:
        if args.diagonalizable:
            count = subalgebras.diag_subalgebra_census(args.p, args.n)
            payload = {"p": args.p, "n": args.n, "kind": "diagonalizable", "count": str(count)}
        else:
            if args.dim is None:
                print("error: --dim is required (or use --diagonalizable)", file=sys.stderr)
                return EXIT_USAGE
            count, _ = subalgebras.commutative_census(args.p, args.n, args.dim)
            payload = {
                "p": args.p,
                "n": args.n,
                "dim": args.dim,
                "kind": "commutative",
                "count": str(count),
            }
    except WorkCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WORK_CAP
    _write_output(json.dumps(payload, sort_keys=True), args.out_file)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcensus",
        description="Exact censuses of finite-field matrices commuting with "
        "their entrywise p-th-power image, with closed-form predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_census = sub.add_parser("census", help="enumerate one matrix space")
    p_census.add_argument("--p", type=int, required=True)
    p_census.add_argument("--e", type=int, required=True)
    p_census.add_argument("--n", type=int, required=True)
    p_census.add_argument("--strata", action="store_true")
    p_census.add_argument("--out", choices=("json", "csv"), default="json")
    p_census.add_argument("--out-file", default="-")
    p_census.add_argument("--workers", type=int, default=None)
    p_census.add_argument("--chunk-size", type=int, default=census_mod.DEFAULT_CHUNK_SIZE)
    p_census.add_argument("--work-cap", type=int, default=None)
    p_census.set_defaults(func=_cmd_census)

    p_pred = sub.add_parser("predict", help="print a closed-form prediction")
    p_pred.add_argument(
        "--class",
        dest="class_tag",
        required=True,
        choices=("X_diag", "X_inf", "X_inf_diag", "X_eig_fp", "X_n2_exact"),
    )
    p_pred.add_argument("--p", type=int, required=True)
    p_pred.add_argument("--n", type=int, default=None)
    p_pred.add_argument("--q", type=int, default=None)
    p_pred.add_argument("--out-file", default="-")
    p_pred.set_defaults(func=_cmd_predict)

    p_ver = sub.add_parser("verify", help="run the acceptance suite")
    p_ver.add_argument("--suite", choices=("fast", "full"), default="fast")
    p_ver.add_argument("--out", default="-")
    p_ver.add_argument("--seed", type=int, default=20240801)
    p_ver.set_defaults(func=_cmd_verify)

    p_q = sub.add_parser("quivers", help="balanced quiver classes")
    p_q.add_argument("--n", type=int, required=True)
    p_q.add_argument("--maximizers", action="store_true")
    p_q.add_argument("--out-file", default="-")
    p_q.set_defaults(func=_cmd_quivers)

    p_s = sub.add_parser("shapes", help="block-structure shape classes")
    p_s.add_argument("--n", type=int, required=True)
    p_s.add_argument("--maximizers", action="store_true")
    p_s.add_argument("--out-file", default="-")
    p_s.set_defaults(func=_cmd_shapes)

    p_a = sub.add_parser("subalgebras", help="commutative subalgebra censuses")
    p_a.add_argument("--p", type=int, required=True)
    p_a.add_argument("--n", type=int, required=True)
    p_a.add_argument("--dim", type=int, default=None)
    p_a.add_argument("--diagonalizable", action="store_true")
    p_a.add_argument("--out-file", default="-")
    p_a.set_defaults(func=_cmd_subalgebras)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FcensusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
