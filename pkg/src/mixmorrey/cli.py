"""Command line entry point: ``mixmorrey <command> ...``.

Exit codes: 0 pass, 1 fail, 2 hypothesis or input error. JSON output
carries ``schema: 1``.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .conditions import classify_exponents, evaluate_case, theorem_case
from .core import Cube, ExponentVector, Generator, GridSpec, Weight, sample
from .exceptions import HypothesisError
from .mixed_norm import mixed_norm
from .morrey import MorreySpaceSpec, global_morrey_norm, local_morrey_norm, mixed_morrey_norm
from .operators import (FractionalKernelSpec, fractional_integral, fractional_maximal, hardy, inner_points,
                        partial_inner, partial_outer)
from .verify import SCHEMA_VERSION, THEOREM_IDS, FAMILY_KINDS, _jsonable, make_family, support_reach, \
    verify_theorem

EXIT_PASS, EXIT_FAIL, EXIT_HYPOTHESIS = 0, 1, 2
DEFAULT_RES = 64


def _load_json(text):
    text = text.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _exponents(text):
    return ExponentVector.coerce([p.strip() for p in text.split(",")])


def _theta(text):
    return math.inf if text.lower().startswith("inf") else float(text)


def _region(text):
    kind, _, body = text.partition(":")
    if kind != "cube" or not body:
        raise ValueError(f"region must look like cube:<center>,<r>, got {text!r}")
    vals = [float(v) for v in body.split(",")]
    return Cube(tuple(vals[:-1]), vals[-1])


def _point(text, n):
    if text is None:
        return np.zeros(n)
    return np.array([float(v) for v in text.split(",")])


def _dimension(gen, fallback):
    for key in ("center", "exponents"):
        if key in gen.params:
            return len(gen.params[key])
    return fallback


def _function(args):
    gen = Generator.from_dict(_load_json(args.f))
    n = _dimension(gen, args.n)
    if args.grid:
        grid = GridSpec.from_dict(_load_json(args.grid))
    else:
        grid = GridSpec(Cube((0.0,) * n, 2.0 * support_reach(gen, n)), args.res)
    return sample(gen, grid)


def _emit(payload, out, stream):
    payload = _jsonable({"schema": SCHEMA_VERSION, **payload})
    if out == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in payload.items():
            w.writerow([k, json.dumps(v) if isinstance(v, (dict, list)) else v])
    else:
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def cmd_norm(args, stream):
    f = _function(args)
    if args.space == "lebesgue":
        p = _exponents(args.p)
        region = _region(args.region) if args.region else None
        res = mixed_norm(f, p, region, richardson_check=args.richardson)
        _emit(res.to_dict(), args.out, stream)
        return EXIT_PASS
    p = _exponents(args.p)
    if args.space == "mixed-morrey":
        if args.q is None:
            raise ValueError("mixed-morrey needs --q")
        res = mixed_morrey_norm(f, p, _theta(args.q))
    else:
        if args.theta is None or args.omega is None:
            raise ValueError(f"{args.space} needs --theta and --omega")
        spec = MorreySpaceSpec(p, _theta(args.theta), Weight.parse(args.omega))
        if args.space == "lm":
            res = local_morrey_norm(f, spec, _point(args.x, f.n), r_max=args.r_max)
        else:
            res = global_morrey_norm(f, spec, r_max=args.r_max)
    _emit({**res.to_dict(), "resolution": f.grid.points_per_axis}, args.out, stream)
    return EXIT_PASS


def _table(rows, header, out, stream):
    if out == "json":
        _emit({"columns": header, "rows": rows}, "json", stream)
        return
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) for v in row])


def cmd_op(args, stream):
    out = args.out or "csv"
    if args.kind == "hardy":
        gen = Generator.from_dict(_load_json(args.f))
        t = np.linspace(0.0, args.t_max, args.res + 1)
        g = gen(t[:, None])
        _table(np.column_stack([t, hardy(g, t)]).tolist(), ["t", "value"], out, stream)
        return EXIT_PASS
    if args.alpha is None:
        raise ValueError(f"{args.kind} needs --alpha")
    f = _function(args)
    n = f.n
    header = [f"x{i + 1}" for i in range(n)] + ["value"]
    if args.kind in ("inner", "outer"):
        if args.r is None:
            raise ValueError(f"{args.kind} needs --r")
        x = _point(args.x, n)
        fn = partial_inner if args.kind == "inner" else partial_outer
        v = fn(f, args.alpha, x, args.r, near_field=args.near_field)
        _table([list(x) + [v]], header, out, stream)
        return EXIT_PASS
    grid = inner_points(f.grid)
    pts = grid.points().reshape(-1, n)
    if args.kind == "ialpha":
        spec = FractionalKernelSpec(args.alpha, n, near_field=args.near_field)
        vals = fractional_integral(f, spec, grid).samples.ravel()
    else:
        vals = fractional_maximal(f, args.alpha, pts)
    _table(np.column_stack([pts, vals]).tolist(), header, out, stream)
    return EXIT_PASS


def cmd_check_conditions(args, stream):
    p1, p2 = _exponents(args.p1), _exponents(args.p2)
    theta1, theta2 = _theta(args.theta1), _theta(args.theta2)
    w1, w2 = Weight.parse(args.omega1), Weight.parse(args.omega2)
    regime = classify_exponents(p1, p2, args.alpha)
    if not regime:
        raise HypothesisError("the exponents satisfy none of the three exponent regimes", "(4.1)/(4.2)/(4.3)")
    if p1.sum_reciprocal() - args.alpha <= 0:
        raise HypothesisError("sigma = sum 1/p1 - alpha is not positive", "sigma > 0")
    reports = evaluate_case(w1, w2, theta1, theta2, p1, p2, args.alpha, method=args.method)
    passed = all(r.finite for r in reports)
    _emit({"case": theorem_case(theta1, theta2), "exponent_case": regime.which, "passed": passed,
           "reports": [r.to_dict() for r in reports]}, args.out, stream)
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_verify(args, stream):
    config = _load_json(args.config) if args.config else None
    rep = verify_theorem(args.theorem_id, config, res=args.res_explicit, seed=args.seed)
    if args.out == "csv":
        stream.write(rep.to_csv())
    else:
        stream.write(rep.to_json() + "\n")
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_family(args, stream):
    params = _load_json(args.params) if args.params else {}
    fam = make_family(args.kind, params, seed=args.seed)
    _emit({"family": fam.to_dict(), "size": len(fam)}, args.out, stream)
    return EXIT_PASS


def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--res", type=int, default=default(None), dest="res_explicit",
                        help="points per axis (default depends on the command)")
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--out", choices=("json", "csv"), default=default(None))


def build_parser():
    parser = argparse.ArgumentParser(prog="mixmorrey", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        _global_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    def function_args(p):
        p.add_argument("--f", required=True, help="generator JSON (inline or a file path)")
        p.add_argument("--grid", help="grid JSON {center, half_side, points_per_axis}")
        p.add_argument("--n", type=int, default=2, help="dimension when the generator does not fix it")

    p = add("norm", cmd_norm, help="mixed Lebesgue or Morrey-type norm of a generator")
    function_args(p)
    p.add_argument("--p", required=True, help="comma-separated exponents, 'inf' allowed")
    p.add_argument("--space", choices=("lebesgue", "lm", "gm", "mixed-morrey"), default="lebesgue")
    p.add_argument("--region", help="cube:<center>,<r>")
    p.add_argument("--theta")
    p.add_argument("--omega", help="power:<lambda>[:<lo>:<hi>]")
    p.add_argument("--q", help="Morrey index for mixed-morrey")
    p.add_argument("--x", help="comma-separated center for lm")
    p.add_argument("--r-max", type=float, default=math.inf)
    p.add_argument("--richardson", action="store_true")

    p = add("op", cmd_op, help="apply I_alpha, M_alpha, H or a partial potential")
    p.add_argument("--kind", choices=("ialpha", "malpha", "hardy", "inner", "outer"), required=True)
    function_args(p)
    p.add_argument("--alpha", type=float)
    p.add_argument("--x")
    p.add_argument("--r", type=float)
    p.add_argument("--near-field", type=int, default=1)
    p.add_argument("--t-max", type=float, default=1.0)

    p = add("check-conditions", cmd_check_conditions, help="evaluate the Hardy-type A-conditions")
    for name in ("theta1", "theta2", "omega1", "omega2", "p1", "p2"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--method", choices=("auto", "closed_form", "numeric"), default="auto")

    p = add("verify", cmd_verify, help="run a registered statement check")
    p.add_argument("theorem_id", choices=THEOREM_IDS)
    p.add_argument("--config", help="config overrides as JSON (inline or a file path)")

    p = add("family", cmd_family, help="print a test family")
    p.add_argument("kind", choices=FAMILY_KINDS)
    p.add_argument("--params", help="family parameters as JSON")
    return parser


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    args.res = args.res_explicit or DEFAULT_RES
    try:
        return args.func(args, stream)
    except HypothesisError as exc:
        _emit({"error": str(exc), "condition": exc.condition}, "json", sys.stderr)
        return EXIT_HYPOTHESIS
    except (ValueError, TypeError, KeyError, OSError) as exc:
        _emit({"error": str(exc)}, "json", sys.stderr)
        return EXIT_HYPOTHESIS


def run(argv):
    """Call :func:`main` and capture its output; returns ``(exit_code, text)``."""
    buf = io.StringIO()
    return main(argv, buf), buf.getvalue()


def entry():
    sys.exit(main())
