"""Command-line surface.

Every angular momentum is passed as a twice-value (flag --twoj), so all
inputs are plain integers.  Exit codes: 0 for success or a mathematically
true result, 1 for a mathematically false/failed result, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classify, constructions, gmod, wigner
from .exact import rat_to_str
from .gmod import GRep


def _twoj_args(parser: argparse.ArgumentParser, count: int, names: str) -> None:
    parser.add_argument(
        "--twoj",
        type=int,
        nargs=count,
        required=True,
        metavar=tuple(names.split()),
        help=f"twice-values of {names}",
    )


def _cmd_sixj(args) -> int:
    value = wigner.sixj(*args.twoj)
    if args.format == "json":
        print(json.dumps({"twoj": args.twoj, "value": str(value)}))
    else:
        print(value)
    return 0


def _cmd_cgc(args) -> int:
    value = wigner.cgc(*args.twoj)
    if args.format == "json":
        print(json.dumps({"twoj": args.twoj, "value": str(value)}))
    else:
        print(value)
    return 0


def _cmd_delta(args) -> int:
    value = wigner.delta(*args.twoj)
    if args.format == "json":
        print(json.dumps({"twoj": args.twoj, "value": str(value)}))
    else:
        print(value)
    return 0


def _cmd_triangle(args) -> int:
    ok = wigner.triangle(*args.twoj)
    print("true" if ok else "false")
    return 0 if ok else 1


def _need(args, parser, *names) -> list[int]:
    vals = []
    for name in names:
        val = getattr(args, name)
        if val is None:
            parser.error(f"--kind {args.kind} requires --{name}")
        vals.append(val)
    return vals


def _cmd_realize(args, parser) -> int:
    kind = args.kind
    if kind == "z":
        ell, b, m = _need(args, parser, "ell", "b", "m")
        rep = constructions.build_z(ell, b, m)
    elif kind == "zdual":
        ell, b, m = _need(args, parser, "ell", "b", "m")
        rep = constructions.build_z_dual(ell, b, m)
    elif kind == "len3":
        m, c = _need(args, parser, "m", "c")
        rep = constructions.build_exceptional_len3(m, c)
    elif kind == "zfam":
        (m,) = _need(args, parser, "m")
        z = Fraction(args.z) if args.z is not None else Fraction(0)
        rep = constructions.build_z_family(m, z)
    elif kind == "sympow":
        m, b = _need(args, parser, "m", "b")
        pair = constructions.build_symmetric_power(m, b)
        rep = pair.big if args.part == "big" else pair.sub
    else:  # pragma: no cover - argparse restricts choices
        parser.error(f"unknown kind {kind}")
    if args.format == "latex":
        print(constructions.grep_to_latex(rep))
    else:
        print(gmod.grep_to_json(rep))
    return 0


def _load_grep(path: str) -> GRep:
    with open(path, "r", encoding="utf-8") as fh:
        return gmod.grep_from_json(fh.read())


def _cmd_socle(args) -> int:
    rep = _load_grep(getattr(args, "in"))
    series = gmod.socle_series(rep)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "steps": [
                        {
                            "dimension": len(step.basis),
                            "factors": {str(k): n for k, n in sorted(step.factors.items())},
                        }
                        for step in series.steps
                    ]
                }
            )
        )
    else:
        for i, step in enumerate(series.steps, start=1):
            factors = " + ".join(
                f"{n} x V({k})" if n > 1 else f"V({k})"
                for k, n in sorted(step.factors.items(), reverse=True)
            )
            print(f"step {i}: dim {len(step.basis)}, factor {factors}")
    return 0


def _cmd_uniserial(args) -> int:
    ok = gmod.is_uniserial(_load_grep(getattr(args, "in")))
    print("true" if ok else "false")
    return 0 if ok else 1


def _cmd_admissible(args) -> int:
    seq = [int(x) for x in args.seq.split(",")]
    verdict = classify.is_admissible(seq, args.m)
    if verdict.witness:
        print(f"{verdict.status} ({verdict.witness})")
    else:
        print(verdict.status)
    return 0 if verdict.admissible else 1


def _cmd_zeros(args) -> int:
    zeros = wigner.find_sixj_zeros(args.max, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps([list(z) for z in zeros]))
    elif args.format == "csv":
        print("twoj1,twoj2,twoj3,twoj4,twoj5,twoj6")
        for z in zeros:
            print(",".join(str(t) for t in z))
    else:
        for z in zeros:
            print(" ".join(str(t) for t in z))
    return 0


def _cmd_verify_scalar(args) -> int:
    reports = classify.verify_scalar_sweep(args.max, jobs=args.jobs)
    print("a,b,c,p,q,k,lambda,c_factor,sixj,product,agrees")
    all_ok = True
    for r in reports:
        all_ok &= r.agrees
        print(
            f"{r.a},{r.b},{r.c},{r.p},{r.q},{r.k},{rat_to_str(r.lam)},"
            f"{r.c_factor},{r.sixj},{r.product},{'true' if r.agrees else 'false'}"
        )
    return 0 if all_ok else 1


def _cmd_verify_classify(args) -> int:
    rows = classify.classification_sweep(args.max_m, args.max_weight, jobs=args.jobs)
    print("m,a,b,c,closed_form,sixj_vanishing,alternating_image_empty,assembly_succeeds,consistent")
    all_ok = True
    for r in rows:
        all_ok &= r.consistent
        cells = [
            r.m,
            r.a,
            r.b,
            r.c,
            "true" if r.closed_form else "false",
            "true" if r.sixj_vanishing else "false",
            "true" if r.alternating_image_empty else "false",
            "true" if r.assembly_succeeds else "false",
            "true" if r.consistent else "false",
        ]
        print(",".join(str(x) for x in cells))
    return 0 if all_ok else 1


def _cmd_recouple(args) -> int:
    ok = classify.verify_recoupling(*args.twoj)
    print("true" if ok else "false")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="racahmod",
        description=(
            "Exact 6j / Clebsch-Gordan values and uniserial module "
            "constructions for sl(2) semidirect V(m)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sixj", help="evaluate a 6j-symbol")
    _twoj_args(p, 6, "j1 j2 j3 j4 j5 j6")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("cgc", help="evaluate a Clebsch-Gordan coefficient")
    _twoj_args(p, 6, "j1 m1 j2 m2 j3 m3")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("delta", help="evaluate a Delta triangle factor")
    _twoj_args(p, 3, "j1 j2 j3")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("triangle", help="test the triangle condition")
    _twoj_args(p, 3, "a b c")

    p = sub.add_parser("realize", help="build an explicit uniserial module")
    p.add_argument("--kind", choices=["z", "zdual", "len3", "zfam", "sympow"], required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--z", type=str, help="family parameter, an exact rational like 5/7")
    p.add_argument("--part", choices=["big", "sub"], default="sub")
    p.add_argument("--format", choices=["json", "latex"], default="json")

    p = sub.add_parser("socle", help="socle series of a module from JSON")
    p.add_argument("--in", required=True, metavar="FILE")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("uniserial", help="test uniseriality of a module from JSON")
    p.add_argument("--in", required=True, metavar="FILE")

    p = sub.add_parser("admissible", help="decide admissibility of a factor sequence")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seq", required=True, help="comma-separated highest weights")

    p = sub.add_parser("zeros", help="search non-trivial 6j zeros")
    p.add_argument("--max", type=int, required=True, help="twice-value bound per slot")
    p.add_argument("--jobs", type=int, default=wigner.default_jobs())
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("verify-scalar", help="sweep the lambda = C * 6j identity")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=wigner.default_jobs())

    p = sub.add_parser("verify-classify", help="three-way length-3 classification sweep")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--jobs", type=int, default=wigner.default_jobs())

    p = sub.add_parser("recouple", help="verify 6j transition coefficients")
    _twoj_args(p, 4, "a b c k")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sixj":
            return _cmd_sixj(args)
        if args.command == "cgc":
            return _cmd_cgc(args)
        if args.command == "delta":
            return _cmd_delta(args)
        if args.command == "triangle":
            return _cmd_triangle(args)
        if args.command == "realize":
            return _cmd_realize(args, parser)
        if args.command == "socle":
            return _cmd_socle(args)
        if args.command == "uniserial":
            return _cmd_uniserial(args)
        if args.command == "admissible":
            return _cmd_admissible(args)
        if args.command == "zeros":
            return _cmd_zeros(args)
        if args.command == "verify-scalar":
            return _cmd_verify_scalar(args)
        if args.command == "verify-classify":
            return _cmd_verify_classify(args)
        if args.command == "recouple":
            return _cmd_recouple(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unhandled command")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
