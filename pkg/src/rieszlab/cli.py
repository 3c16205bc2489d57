"""Command-line entry point: ``rieszlab <subcommand> ...``.

Terms are s-expressions (or ``@file``), vectors and matrices JSON arrays of
``"p/q"`` strings.  Exit status is 0 when every check passes, 1 when a check
fails and 2 on bad input.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, pl
from . import spectrum as sp
from .constructions import (PLSpace, cover_to_partition, freudenthal_approx, level_partition,
                            verify_slice_partition)
from .dini import dini_uniform
from .finite import BilinearMap, FinSpace, FinVec, main_theorem_ledger
from .pl import BoxDomain, DominanceCeilingError
from .lp import DimensionCapError
from .sexpr import parse_term
from .suites import SUITES, RunConfig, jsonable, run_suite, seed_from_env


class InputError(ValueError):
    pass


def _text(arg):
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            return fh.read()
    return arg


def parse_rational(s):
    try:
        if isinstance(s, int) and not isinstance(s, bool):
            return Fraction(s)
        if isinstance(s, str) and "." not in s and "e" not in s.lower():
            return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    raise InputError(f"not an exact rational: {s!r} (use \"p/q\")")


def parse_vector(arg):
    data = json.loads(_text(arg))
    if not isinstance(data, list) or not data:
        raise InputError("a vector is a non-empty JSON array")
    return FinVec([parse_rational(x) for x in data])


def parse_matrix(arg):
    data = json.loads(_text(arg))
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("a matrix is a JSON array of arrays")
    return BilinearMap([[parse_rational(x) for x in row] for row in data])


def parse_box(text):
    """``"lo,hi;lo,hi"`` with rational bounds."""
    out = []
    for part in text.split(";"):
        bounds = part.split(",")
        if len(bounds) != 2:
            raise InputError(f"bad interval {part!r}")
        out.append(tuple(parse_rational(b.strip()) for b in bounds))
    return tuple(out)


def _domain(args, *terms):
    if args.box:
        return BoxDomain(parse_box(args.box))
    dim = args.dim or max([pl.max_generator(t) + 1 for t in terms] + [1])
    return BoxDomain.unit_cube(dim)


def _term(args, text, dom=None):
    return parse_term(_text(text), dom.dim if dom else None)


def _terms(args, *texts):
    ts = [_term(args, t) for t in texts]
    dom = _domain(args, *ts)
    for t in ts:
        dom.check(t)
    return dom, ts


# -- subcommands ----------------------------------------------------------

def cmd_decide_leq(args):
    dom, (a, b) = _terms(args, args.a, args.b)
    x = pl.counterexample(a, b, dom)
    out = {"leq": x is None}
    if x is not None:
        out.update(counterexample=list(x), a_value=pl.evaluate(a, x), b_value=pl.evaluate(b, x))
    return out, True


def cmd_dominates(args):
    dom, (a, b) = _terms(args, args.a, args.b)
    res = pl.dominates(a, b, dom, ceiling=args.ceiling)
    if res.dominated:
        return {"dominated": True, "n": res.n, "minimal": res.minimal}, True
    return {"dominated": False, "witness": list(res.witness)}, True


def cmd_norm(args):
    dom, (a,) = _terms(args, args.a)
    return {"norm": pl.norm(a, dom), "upper_bound": pl.upper_bound(a, dom),
            "lower_bound": pl.lower_bound(a, dom)}, True


def cmd_lattice(args):
    dom, (a, b) = _terms(args, args.a, args.b)
    u, v = sp.d_of(a, dom), sp.d_of(b, dom)
    out = {"D(a)": u, "D(b)": v, "D(a) <= D(b)": sp.open_leq(u, v),
           "D(b) <= D(a)": sp.open_leq(v, u), "D(a) ^ D(b)": sp.open_meet(u, v),
           "D(a) v D(b)": sp.open_join(u, v), "D(a) = 0": sp.open_is_zero(u),
           "D(a) v D(b) = 1": sp.is_top(sp.open_join(u, v))}
    if out["D(a) v D(b) = 1"]:
        c1, c2 = sp.normality_witness(u, v)
        out.update(c1=c1, c2=c2)
    return out, True


def _element(args, text):
    """A FinVec (JSON array) or a PL term, with its space."""
    if _text(text).lstrip().startswith("["):
        f = parse_vector(text)
        return f, FinSpace(len(f))
    dom, (f,) = _terms(args, text)
    return f, PLSpace(dom)


def cmd_partition(args):
    if args.cover:
        dom, reps = _terms(args, *args.f)
        opens = [sp.d_of(t, dom) for t in reps]
        p = cover_to_partition(opens)
        return {"partition": list(p), "delta": sp.cover_bound(opens)}, True
    if len(args.f) != 1:
        raise InputError("give one element, or several opens with --cover")
    f, space = _element(args, args.f[0])
    k = args.k or 4
    v = level_partition(f, k, space, args.method)
    out = {"partition": list(v)}
    ok = True
    if args.method == "slice":
        led = verify_slice_partition(v, f, k, space)
        out["checks"] = _ledger_json(led)
        ok = led.holds
    return out, ok


def cmd_approx(args):
    f, space = _element(args, args.f)
    N = args.n or 8
    a, err = freudenthal_approx(f, N, space, method=args.method)
    return {"approximant": a, "error": err, "bound": Fraction(1, N)}, err <= Fraction(1, N)


def _ledger_json(led):
    return [{"label": e.label, "left": e.left, "right": e.right, "holds": e.holds}
            for e in led.entries]


def cmd_ledger(args):
    A = parse_matrix(args.matrix)
    f, g = parse_vector(args.f), parse_vector(args.g)
    led = main_theorem_ledger(A, f, g, args.k or 16, method=args.method)
    x = led.extra
    return {"entries": _ledger_json(led), "A(f,g)": x["Afg"], "A(g,f)": x["Agf"],
            "A(1,fg)": x["A1fg"]}, led.holds


def cmd_dini(args):
    f, g, h = (parse_vector(v) for v in (args.f, args.g, args.h))
    led = dini_uniform(f, g, h, args.m or 4)
    return {"n": led.extra["n"], "value": led.extra["value"], "entries": _ledger_json(led)}, led.holds


def cmd_suite(args):
    cfg = RunConfig(box=parse_box(args.box) if args.box else None, dim=args.dim,
                    seed=args.seed, cases=args.cases or 100, k=args.k, m=args.m, n=args.n,
                    output_path=args.report, doubling_ceiling=args.ceiling)
    rep = run_suite(cfg, args.name)
    return rep, rep.ok


COMMANDS = {
    "decide-leq": cmd_decide_leq, "dominates": cmd_dominates, "norm": cmd_norm,
    "lattice": cmd_lattice, "partition": cmd_partition, "approx": cmd_approx,
    "ledger": cmd_ledger, "dini": cmd_dini, "suite": cmd_suite,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int)
    common.add_argument("--box", help='intervals "lo,hi;lo,hi"')
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cases", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--report", help="also write the JSON result to this path")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--ceiling", type=int, default=pl.DEFAULT_DOUBLING_CEILING)

    parser = argparse.ArgumentParser(prog="rieszlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("decide-leq", "dominates", "lattice"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("a")
        p.add_argument("b")
    sub.add_parser("norm", parents=[common]).add_argument("a")
    p = sub.add_parser("partition", parents=[common])
    p.add_argument("f", nargs="+")
    p.add_argument("--cover", action="store_true", help="treat the terms as the cover D(b_1)..D(b_K)")
    p.add_argument("--method", choices=("slice", "band"), default="slice")
    p = sub.add_parser("approx", parents=[common])
    p.add_argument("f")
    p.add_argument("--method", choices=("slice", "band"), default="slice")
    p = sub.add_parser("ledger", parents=[common])
    for name in ("matrix", "f", "g"):
        p.add_argument(name)
    p.add_argument("--method", choices=("slice", "band"), default="slice")
    p = sub.add_parser("dini", parents=[common])
    for name in ("f", "g", "h"):
        p.add_argument(name)
    sub.add_parser("suite", parents=[common]).add_argument("name", help=", ".join(SUITES))
    return parser


def _render_text(result):
    if hasattr(result, "to_dict"):
        d = result.to_dict()
        lines = [f"{c['name']}: {'pass' if c['passed'] else 'FAIL'}" for c in d["checks"]]
        s = d["summary"]
        lines.append(f"{s['passed']}/{s['total']} passed")
        return "\n".join(lines)
    return "\n".join(f"{k}: {json.dumps(jsonable(v))}" for k, v in result.items())


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = seed_from_env()
    try:
        result, ok = COMMANDS[args.command](args)
    except (ValueError, DimensionCapError, DominanceCeilingError, OSError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err) if args.format == "json" else f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = result.to_json() if hasattr(result, "to_json") else json.dumps(jsonable(result), indent=1)
    else:
        text = _render_text(result)
    print(text)
    if args.report and args.command != "suite":
        with open(args.report, "w") as fh:
            fh.write(json.dumps(jsonable(result), indent=1) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
