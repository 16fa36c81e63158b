"""Command-line interface.

    qwhittaker whittaker --rank 2 --point 1,0
    qwhittaker macdonald --rank 2 --lambda 2,0 --q 1/2 --t 1/3
    qwhittaker demazure --rank 2 --point 1,-1
    qwhittaker torus --rank 3 --point 2,1,0
    qwhittaker verify --suite all --rank 3 --box 0..3

Exit status: 0 on success, 1 when a verification fails, 2 on invalid input.
Timings go to stderr so stdout is reproducible byte for byte.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import demazure, macdonald, qtoda, qtorus
from .errors import PoleError, SingularSystemError
from .serialize import to_obj
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
DEFAULT_MAX_RANK = 4
DEFAULT_MAX_ENTRY = 8


class InvalidJob(ValueError):
    pass


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise InvalidJob(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidJob(f"expected an exact rational, got {text!r}") from None


def _box(text: str) -> tuple:
    parts = text.split("..")
    if len(parts) != 2:
        raise InvalidJob(f"expected LO..HI, got {text!r}")
    lo, hi = (int(p) for p in parts)
    if lo > hi:
        raise InvalidJob(f"empty box {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwhittaker", description="Exact q-Whittaker and Macdonald computations.")
    parser.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)
    parser.add_argument("--max-entry", type=int, default=DEFAULT_MAX_ENTRY)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--rank", type=int, required=True, help="number of variables l+1")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="write the result to this file instead of stdout")

    p = sub.add_parser("whittaker", help="Psi or Psi~ at a lattice point")
    common(p)
    p.add_argument("--point", required=True)
    p.add_argument("--normalized", action="store_true", help="return Psi~ = Delta(p) Psi")
    p.add_argument("--route", choices=("gz", "recursive", "macdonald", "demazure", "torus"), default="gz",
                   help="construction; every route except gz and recursive yields Psi~")

    p = sub.add_parser("macdonald", help="P_lambda at a specialization")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--q", help="rational q; omit for symbolic q")
    p.add_argument("--t", help="rational t (t=0 with symbolic q is allowed)")
    p.add_argument("--k", type=int, help="t = q^(-k) with symbolic q")

    p = sub.add_parser("demazure", help="pi of a Demazure character for a dominant point")
    common(p)
    p.add_argument("--point", required=True)

    p = sub.add_parser("torus", help="quantum torus matrix element for a dominant point")
    common(p)
    p.add_argument("--point", required=True)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--box", default="0..3")
    p.add_argument("--trunc", type=int, help="q-adic order N (mod q^(N+1)) for the constant-term suite; default 8")
    return parser


def _check_rank(args):
    if args.rank < 1:
        raise InvalidJob("rank must be positive")
    if args.rank > args.max_rank:
        raise InvalidJob(f"rank {args.rank} exceeds the maximum {args.max_rank}")


def _check_entries(vec, args, what="point"):
    if len(vec) != args.rank:
        raise InvalidJob(f"{what} {vec} does not have {args.rank} entries")
    if any(abs(x) > args.max_entry for x in vec):
        raise InvalidJob(f"{what} {vec} has an entry beyond {args.max_entry}")


def _dominant_point(args) -> tuple:
    p = _int_list(args.point)
    _check_entries(p, args)
    if not qtoda.is_dominant(p):
        raise InvalidJob(f"{p} is not weakly decreasing")
    return p


def _spec(args) -> macdonald.SpecPoint:
    if args.k is not None:
        if args.q is not None or args.t is not None:
            raise InvalidJob("--k fixes t = q^(-k) with symbolic q; drop --q and --t")
        return macdonald.SpecPoint.t_q_power(args.k)
    if args.t is None:
        raise InvalidJob("give --t (and --q) or --k")
    t = _fraction(args.t)
    if args.q is None:
        if t != 0:
            raise InvalidJob("symbolic q is only available with t = 0 or t = q^(-k)")
        return macdonald.SpecPoint.t_zero()
    q = _fraction(args.q)
    if q == 0:
        raise PoleError("q = 0 is a pole of the scalar product")
    return macdonald.SpecPoint.numeric(q, t)


def _value_output(value, args, names=None, extra=None) -> str:
    if args.format == "text":
        lines = [str(value)]
        if extra:
            lines.insert(0, " ".join(f"{k}={v}" for k, v in extra.items()))
        return "\n".join(lines)
    obj = to_obj(value, names)
    if extra:
        obj = {**extra, "value": obj}
    return json.dumps(obj, separators=(",", ":"))


def run(args) -> tuple:
    """Execute a parsed job; returns ``(exit_status, output_text)``."""
    _check_rank(args)
    cmd = args.command
    if cmd == "whittaker":
        p = _int_list(args.point)
        _check_entries(p, args)
        route = args.route
        if route == "gz":
            v = qtoda.whittaker_tilde(p) if args.normalized else qtoda.whittaker_gz(p)
        elif route == "recursive":
            v = qtoda.whittaker_recursive(p)
            if args.normalized:
                v = qtoda.normalize_whittaker(p, v) if qtoda.is_dominant(p) else v
        elif not qtoda.is_dominant(p):
            v = qtoda.whittaker_tilde(p)
        elif route == "macdonald":
            v = qtoda.whittaker_from_macdonald(p)
        elif route == "demazure":
            v = demazure.whittaker_from_demazure(p, corrected=True)
        else:
            if min(p) < 0:
                shift = -min(p)
                v = qtorus.whittaker_matrix_element(tuple(x + shift for x in p)).shift((-shift,) * len(p))
            else:
                v = qtorus.whittaker_matrix_element(p)
        return EXIT_OK, _value_output(v, args)
    if cmd == "macdonald":
        lam = _int_list(args.lam)
        _check_entries(lam, args, "lambda")
        if not qtoda.is_dominant(lam):
            raise InvalidJob(f"{lam} is not weakly decreasing")
        spec = _spec(args)
        P = macdonald.extend_generalized(lam, args.rank, spec)
        names = [f"x{i + 1}" for i in range(args.rank)]
        return EXIT_OK, _value_output(P.poly, args, names)
    if cmd == "demazure":
        p = _dominant_point(args)
        ch, (k, i, word) = demazure.character_for_point(p)
        image = demazure.pi_homomorphism(ch, len(p))
        extra = {"k": k, "i": i, "word": list(word),
                 "degree": str(-demazure.sanderson_prefactor_exponent(tuple(reversed(p))))}
        return EXIT_OK, _value_output(image, args, extra=extra)
    if cmd == "torus":
        p = _dominant_point(args)
        if min(p) < 0:
            raise InvalidJob("the matrix element needs nonnegative entries")
        return EXIT_OK, _value_output(qtorus.whittaker_matrix_element(p), args)
    if cmd == "verify":
        lo, hi = _box(args.box)
        if max(abs(lo), abs(hi)) > args.max_entry:
            raise InvalidJob(f"box {args.box} exceeds the entry bound {args.max_entry}")
        names = SUITES if args.suite == "all" else (args.suite,)
        if args.trunc is not None and args.trunc < 0:
            raise InvalidJob("--trunc must be nonnegative")
        reports = run_suites(names, args.rank, (lo, hi), args.trunc)
        for rep in reports:
            for c in rep.checks:
                print(f"{c.name}: {c.seconds:.3f}s", file=sys.stderr)
        ok = all(r.passed for r in reports)
        if args.format == "text":
            text = "\n".join(r.to_text() for r in reports)
        else:
            text = json.dumps({"status": "pass" if ok else "fail", "reports": [r.to_obj() for r in reports]},
                              separators=(",", ":"))
        return (EXIT_OK if ok else EXIT_FAIL), text
    raise InvalidJob(f"unknown command {cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        status, text = run(args)
    except InvalidJob as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (PoleError, SingularSystemError) as exc:
        print(f"error: pole in specialization: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
