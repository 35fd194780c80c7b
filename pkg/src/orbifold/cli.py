"""Command-line front end: ``orbifold {validate,stats,qdim,search,verify} PROBLEM ...``.

Exit codes: 0 success (for search: a consistent system was found), 1 nothing
found / verification failed, 2 input error, 3 every candidate hit a resource limit.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .ansatz import build_generic
from .equations import append_nonvanishing, extract, linear_eliminate, stats
from .feasibility import (CONSISTENT, RESOURCE_LIMIT, CentralChargeWarning, DEFAULT_LIMITS, export,
                          reduce_system, search)
from .groebner import Limits
from .mf import grading_matrix_check, quantum_dimension, read_matrix_factorization, verify_factorization
from .problem import load_problem
from .ring import ParseError, PotentialError, central_charge, format_rational, parse_polynomial

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path):
    try:
        return load_problem(path)
    except OSError as exc:
        raise InputError(str(exc)) from None


def _pair(problem):
    try:
        return problem.pair()
    except PotentialError as exc:
        raise InputError(f"invalid potential: {exc}") from None


def _charge_check(pair, out):
    cl, cr = central_charge(pair.left), central_charge(pair.right)
    if cl != cr:
        print(f"warning: central charges differ ({format_rational(cl)} vs {format_rational(cr)})", file=out)


def cmd_validate(args, out=sys.stdout) -> int:
    problem = _load(args.problem)
    for side, block in (("left", problem.left), ("right", problem.right)):
        try:
            pot = block.build()
        except PotentialError as exc:
            print(f"{side}: {block.potential}: {exc}", file=out)
            raise InputError(f"{side} potential is invalid: {exc}") from None
        weights = ", ".join(f"{v.name}={format_rational(v.weight)}" for v in pot.ring.variables)
        print(f"{side}: {pot}", file=out)
        print(f"  degree {format_rational(pot.degree)}  weights {weights}", file=out)
        print(f"  jacobian dimension {pot.jacobian_dimension}  central charge "
              f"{format_rational(central_charge(pot))}", file=out)
    _charge_check(_pair(problem), out)
    return EXIT_OK


def cmd_stats(args, out=sys.stdout) -> int:
    problem = _load(args.problem)
    pair = _pair(problem)
    spec = problem.spec(pair, use_seed=not args.no_seed)
    gmf = build_generic(spec)
    if args.reduced:
        sys_ = reduce_system(gmf, half=not args.full)
    else:
        sys_ = extract(gmf, half=not args.full)
        if not args.no_helpers:
            sys_ = append_nonvanishing(sys_, gmf)
    st = stats(sys_)
    print(st.row(problem.name), file=out)
    if args.verbose:
        hist = " ".join(f"{d}:{n}" for d, n in st.degree_histogram.items())
        print(f"  degrees {hist}  density {st.density:.4g}", file=out)
    return EXIT_OK


def _target(args, pair, ring):
    if getattr(args, "target", None):
        return parse_polynomial(args.target, ring)
    return pair.target


def _read_mf(args, pair):
    mf = read_matrix_factorization(Path(args.matrix).read_text(), pair)
    target = _target(args, pair, mf.ring)
    if target != mf.target:
        mf = type(mf)(mf.module, mf.sharp, mf.flat, target)
    return mf


def cmd_qdim(args, out=sys.stdout) -> int:
    problem = _load(args.problem)
    pair = _pair(problem)
    mf = _read_mf(args, pair)
    sides = ("left", "right") if args.side == "both" else (args.side,)
    for side in sides:
        q = quantum_dimension(mf, pair, side)
        flag = "   <-- ZERO" if not q else ""
        print(f"{side} qdim (up to sign): {q}{flag}", file=out)
    return EXIT_OK


def cmd_verify(args, out=sys.stdout) -> int:
    problem = _load(args.problem)
    pair = _pair(problem)
    mf = _read_mf(args, pair)
    check = verify_factorization(mf)
    graded = grading_matrix_check(mf, degree=pair.differential_degree)
    print(f"factorization: {'pass' if check.verified else 'FAIL'}", file=out)
    if not check.verified:
        for name, res in (("sharp*flat", check.residual_sharp_flat), ("flat*sharp", check.residual_flat_sharp)):
            for i, row in enumerate(res):
                for j, x in enumerate(row):
                    if x:
                        print(f"  {name} - target*Id [{i}][{j}] = {x}", file=out)
    print(f"gradings: {'pass' if graded else 'FAIL'}", file=out)
    for side in ("left", "right"):
        q = quantum_dimension(mf, pair, side)
        print(f"{side} qdim (up to sign): {q}{'   <-- ZERO' if not q else ''}", file=out)
    return EXIT_OK if check.verified and graded else EXIT_NONE


def _limits(args, problem) -> Limits:
    base = problem.limits or DEFAULT_LIMITS
    return Limits(steps=args.steps if args.steps is not None else base.steps,
                  polys=args.polys if args.polys is not None else base.polys,
                  seconds=args.seconds if args.seconds is not None else base.seconds)


def cmd_search(args, out=sys.stdout) -> int:
    problem = _load(args.problem)
    if args.seed:
        problem.seed = Path(args.seed)
        if not problem.seed.exists():
            raise InputError(f"seed file {args.seed} does not exist")
    pair = _pair(problem)
    _charge_check(pair, out)
    specs = None
    if args.ansatz or problem.seed is not None:
        specs = [problem.spec(pair)]
    half = not args.full
    if args.export:
        from .ansatz import enumerate_specs
        for spec in specs or enumerate_specs(pair, args.max_rank, args.shift_bound):
            gmf = build_generic(spec)
            sys_ = extract(gmf, half)
            if args.export == "native":
                sys_ = append_nonvanishing(sys_, gmf)
            print(f"# {spec}", file=out)
            out.write(export(sys_, args.export))
        return EXIT_OK
    outcomes = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CentralChargeWarning)
        for report in search(pair, args.max_rank, args.shift_bound, _limits(args, problem), half,
                             specs, witness=not args.no_witness):
            print(report.summary(), file=out)
            outcomes.append(report.verdict.outcome)
    if CONSISTENT in outcomes:
        return EXIT_OK
    if outcomes and all(o == RESOURCE_LIMIT for o in outcomes):
        return EXIT_LIMIT
    return EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbifold", description="Search for orbifold equivalences of potentials.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check both potentials")
    p.add_argument("problem")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="size of the constraint system of the problem's ansatz")
    p.add_argument("problem")
    p.add_argument("--full", action="store_true", help="use both products instead of one")
    p.add_argument("--no-helpers", action="store_true")
    p.add_argument("--no-seed", action="store_true")
    p.add_argument("--reduced", action="store_true", help="report sizes after linear elimination")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("qdim", help="quantum dimensions of a matrix factorization")
    p.add_argument("problem")
    p.add_argument("matrix")
    p.add_argument("--side", choices=("left", "right", "both"), default="both")
    p.add_argument("--target", help="factorized polynomial if not left - right")
    p.set_defaults(func=cmd_qdim)

    p = sub.add_parser("verify", help="check a matrix factorization file")
    p.add_argument("problem")
    p.add_argument("matrix")
    p.add_argument("--target", help="factorized polynomial if not left - right")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="bounded search for a consistent ansatz")
    p.add_argument("problem")
    p.add_argument("--max-rank", type=int, default=1)
    p.add_argument("--shift-bound", default="1")
    p.add_argument("--seed", help="seed matrix file (implies --ansatz)")
    p.add_argument("--ansatz", action="store_true", help="only try the problem's own ansatz")
    p.add_argument("--full", action="store_true", help="do not halve the system")
    p.add_argument("--export", choices=("native", "mq_style"), help="print systems instead of checking them")
    p.add_argument("--steps", type=int)
    p.add_argument("--polys", type=int)
    p.add_argument("--seconds", type=float)
    p.add_argument("--no-witness", action="store_true")
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, ParseError, PotentialError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
