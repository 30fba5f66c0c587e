"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 zero vector, 4 whole-space run refused by the size guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import kernels
from .gf import FieldError, factor_prime_power, field_new
from .linalg import format_coords, parse_coords, pg_normalize, point_from_index
from .orbits import (
    MAX_WHOLE_SPACE_Q,
    ResourceGuardError,
    classify_point,
    verify_theorems,
)
from .rank import ORACLE_MAX_Q, rank_oracle, scaled_pure_tensors, tensor_rank
from .segre import enumerate_segre, parse_segre_point, segre_points, shamrock
from .tensor import as_tensor, flattening_ranks, hyperdeterminant, is_nonsingular, pg1_points

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_ZERO, EXIT_GUARD = 0, 1, 2, 3, 4

log = logging.getLogger("segre222")


class InputError(Exception):
    pass


def _field(args):
    try:
        if args.q is not None:
            p, e = factor_prime_power(args.q)
        elif args.p is not None:
            p, e = args.p, args.e
        else:
            raise InputError("select a field with --q or --p/--e")
        return field_new(p, e)
    except FieldError as exc:
        raise InputError(str(exc)) from exc


def _order(args) -> int:
    if args.q is not None:
        return args.q
    if args.p is not None:
        return args.p ** args.e
    raise InputError("select a field with --q or --p/--e")


def _tensor(F, args):
    if args.coords is None:
        raise InputError("--coords is required")
    try:
        t = as_tensor(F, parse_coords(args.coords))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not any(t):
        raise ZeroDivisionError("the zero vector is not a projective point")
    return t


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def point_record(F, t) -> dict:
    rec = {
        "q": F.q,
        "coords": format_coords(pg_normalize(F, t).coords),
        "rank": tensor_rank(F, t),
        "flattening_ranks": list(flattening_ranks(F, t)),
        "singular": not is_nonsingular(F, t),
    }
    if F.p != 2:
        rec["hyperdeterminant"] = hyperdeterminant(F, t)
    rec["label"] = str(classify_point(F, t))
    return rec


def cmd_classify(args) -> int:
    F = _field(args)
    rec = point_record(F, _tensor(F, args))
    if args.format == "json":
        _emit(args, json.dumps(rec, indent=2) + "\n")
    else:
        _emit(args, " ".join(f"{k}={v}" for k, v in rec.items()) + "\n")
    return EXIT_OK


def cmd_rank(args) -> int:
    F = _field(args)
    t = _tensor(F, args)
    rec = {"coords": format_coords(t), "rank": tensor_rank(F, t)}
    if args.oracle:
        if F.q > ORACLE_MAX_Q:
            raise InputError(f"--oracle needs q <= {ORACLE_MAX_Q}")
        rec["oracle_rank"] = rank_oracle(F, t)
    if args.format == "json":
        _emit(args, json.dumps(rec, indent=2) + "\n")
    else:
        _emit(args, " ".join(f"{k}={v}" for k, v in rec.items()) + "\n")
    return EXIT_OK


def _whole_space(args):
    if _order(args) > MAX_WHOLE_SPACE_Q and not args.allow_large:
        raise ResourceGuardError(
            f"q={_order(args)} exceeds the whole-space limit q <= {MAX_WHOLE_SPACE_Q}; "
            "pass --allow-large to override"
        )
    F = _field(args)
    return verify_theorems(F, threads=args.threads, backend=kernels.get_backend(args.backend),
                           allow_large=args.allow_large)


def _write_report(args, report, default: str) -> None:
    fmt = args.format or default
    if fmt == "csv":
        _emit(args, report.to_csv())
    elif fmt == "json":
        _emit(args, report.to_json(include_meta=args.meta))
    else:
        _emit(args, report.summary_table() + "\n")


def cmd_orbits(args) -> int:
    report = _whole_space(args)
    _write_report(args, report, "json")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = _whole_space(args)
    if args.out:
        _write_report(args, report, "json")
        print(report.summary_table())
    else:
        _write_report(args, report, "text")
    if not report.ok:
        for msg in report.failures:
            print(f"FAILED: {msg}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_shamrock(args) -> int:
    F = _field(args)
    try:
        y = parse_segre_point(F, args.base) if args.base else segre_points(F)[0]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    sh = shamrock(F, y)
    variety = {p.index for p in enumerate_segre(F)}

    idx = sorted(sh.indices)
    coords = np.array([point_from_index(F, n).coords for n in idx], dtype=np.uint8)
    funcs = np.array(pg1_points(F), dtype=np.uint8)
    _, _, ranks = kernels.classify_points(F, coords, scaled_pure_tensors(F), funcs,
                                          args.threads, kernels.get_backend(args.backend))
    rec = sh.summary()
    rec["leaf_variety_sizes"] = [len(leaf.indices & variety) for leaf in sh.leaves]
    rec["max_rank"] = int(ranks.max())
    rec["rank_at_most_two"] = bool(ranks.max() <= 2)
    if args.format == "json":
        _emit(args, json.dumps(rec, indent=2) + "\n")
    else:
        _emit(args, "\n".join(f"{k}: {v}" for k, v in rec.items()) + "\n")
    return EXIT_OK if rec["rank_at_most_two"] else EXIT_FAILED


COMMANDS = {
    "classify": (cmd_classify, "rank, singularity and orbit label of one point"),
    "orbits": (cmd_orbits, "orbit partition of PG(7,q) as a JSON or CSV report"),
    "verify": (cmd_verify, "check the orbit theorems over PG(7,q)"),
    "shamrock": (cmd_shamrock, "leaf and union sizes of the shamrock of a Segre point"),
    "rank": (cmd_rank, "tensor rank of one point"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field order (a prime power <= 16)")
    common.add_argument("--p", type=int, help="field characteristic")
    common.add_argument("--e", type=int, default=1, help="extension degree (with --p)")
    common.add_argument("--coords", help="8 comma-separated field elements, index 4i+2j+k")
    common.add_argument("--base", help="Segre point as 'a,b;c,d;e,f' (shamrock)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--allow-large", action="store_true",
                        help=f"allow whole-space runs with q > {MAX_WHOLE_SPACE_Q}")
    common.add_argument("--backend", choices=["auto", "cython", "python"], default="auto")
    common.add_argument("--meta", action="store_true",
                        help="add a non-canonical 'meta' block (timings, backend) to JSON reports")
    common.add_argument("--oracle", action="store_true", help="rank: also run the exhaustive oracle")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="segre222",
        description="Classify points of PG(7,q) under the stabiliser of the Segre variety S(2,2,2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command][0](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
