"""Command line front end.

Every subcommand prints one JSON document on stdout.  Exit codes: 0 for
success (and passing checks), 1 for a failing check, 2 for usage errors.
All randomness flows through --seed; identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import noninjective, regions, serialize
from .bodies import parse_spec
from .duality import (
    dual_residual,
    invariance_check,
    phi,
    polar_preimage,
    product_apply,
    product_iterate,
    random_polygons,
)
from .ellipses import john_ellipse, loewner_ellipse, verify_john_conditions
from .errors import GeometryError
from .points import PointFunction, eval_point
from .polygons import Polygon, k_sub_z, polar_about


def _point_function(args) -> PointFunction:
    if args.id == "capfamily":
        return PointFunction("capfamily", (args.eps, args.delta))
    return PointFunction(args.id)


def _parse_xy(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    return np.array([float(parts[0]), float(parts[1])])


def _emit(doc, svg_path=None, shapes=()) -> None:
    if svg_path:
        _write_svg(svg_path, shapes)
    sys.stdout.write(serialize.dumps(doc) + "\n")


def _write_svg(path: str, shapes) -> None:
    """Static picture of the given polygons; no styling options."""
    allv = np.vstack([P.vertices for P in shapes])
    lo = allv.min(axis=0)
    hi = allv.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    pad = 0.05 * span
    lo -= pad
    scale = 480.0 / (span + 2 * pad)
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="480" height="480" '
        'viewBox="0 0 480 480">'
    ]
    for i, P in enumerate(shapes):
        pts = " ".join(
            f"{(x - lo[0]) * scale:.2f},{480 - (y - lo[1]) * scale:.2f}"
            for x, y in P.vertices
        )
        lines.append(
            f'<polygon points="{pts}" fill="none" '
            f'stroke="{colors[i % len(colors)]}" stroke-width="1.5"/>'
        )
    lines.append("</svg>")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def _add_body(sub, required=True):
    sub.add_argument("--body", required=required,
                     help="body spec: square, cross, simplex, ngon:M, "
                          "kab:A,B, beta:ETA, random:K,SEED, file:PATH")


def _add_point_id(sub, flag="--id"):
    sub.add_argument(flag, required=True,
                     choices=["centroid", "santalo", "john", "loewner",
                              "symcore", "capfamily"])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="affpoints")
    sp = ap.add_subparsers(dest="cmd", required=True)

    p = sp.add_parser("point", help="evaluate an affine invariant point")
    _add_body(p)
    _add_point_id(p)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.05)

    p = sp.add_parser("polar", help="polar body about a point")
    _add_body(p)
    p.add_argument("--z", type=_parse_xy, default=None,
                   help="base point (default: centroid)")
    p.add_argument("--translate", action="store_true",
                   help="return the polar shifted back to the base point")
    p.add_argument("--svg")

    p = sp.add_parser("shift", help="projective shift of the body by z")
    _add_body(p)
    p.add_argument("--z", type=_parse_xy, required=True)
    p.add_argument("--svg")

    p = sp.add_parser("ellipse", help="John or Loewner ellipse")
    p.add_argument("which", choices=["john", "loewner"])
    _add_body(p)
    p.add_argument("--certify", action="store_true")

    p = sp.add_parser("region", help="affine invariant set mapping")
    p.add_argument("which", choices=["floating", "illumination", "santalo",
                                     "john", "symcore"])
    _add_body(p)
    p.add_argument("--param", type=float, required=True,
                   help="delta for floating/illumination, c for the rest")
    p.add_argument("--rays", type=int, default=regions.DEFAULT_RAYS)
    p.add_argument("--svg")

    p = sp.add_parser("dual-check", help="residual of q(K^{p(K)}) = p(K)")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--jobs", type=int, default=1)

    p = sp.add_parser("product-check", help="check [p,q](r) = r")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--jobs", type=int, default=1)

    p = sp.add_parser("invariance", help="affine equivariance deviation")
    _add_body(p)
    _add_point_id(p)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sp.add_parser("preimage", help="solve p((C - z) polar) = 0 for z")
    _add_body(p)
    _add_point_id(p)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--init", type=_parse_xy, default=None)

    p = sp.add_parser("counterexample",
                      help="certify the non-injective cap point")
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=None)

    p = sp.add_parser("iterate-product", help="iterates of [p,p] applied to r")
    _add_body(p)
    p.add_argument("--p", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--k", type=int, default=5)
    return ap


def _pf(name: str) -> PointFunction:
    if name.startswith("capfamily"):
        _, _, rest = name.partition(":")
        if rest:
            e, d = (float(s) for s in rest.split(","))
            return PointFunction("capfamily", (e, d))
        return PointFunction("capfamily", (0.1, 0.05))
    return PointFunction(name)


def _residual_worker(args):
    p_name, q_name, P = args
    rep = dual_residual(_pf(p_name), _pf(q_name), [P])
    return rep.max_residual, rep.failures


def _dual_check(args) -> int:
    bodies = list(random_polygons(args.trials, args.seed))
    if args.jobs > 1:
        from multiprocessing import get_context

        with get_context("fork").Pool(args.jobs) as pool:
            results = pool.map(_residual_worker,
                               [(args.p, args.q, P) for P in bodies])
        residuals = [r for r, _ in results]
        failures = [f for _, fs in results for f in fs]
    else:
        rep = dual_residual(_pf(args.p), _pf(args.q), bodies)
        residuals = [rep.max_residual]
        failures = list(rep.failures)
    worst = max(residuals)
    passed = worst < args.tol and not failures
    _emit({"pair": [args.p, args.q], "bodies_tested": args.trials,
           "max_residual": worst, "tolerance": args.tol,
           "failures": [list(f) for f in failures], "passed": passed})
    return 0 if passed else 1


def _product_check(args) -> int:
    p, q, r = _pf(args.p), _pf(args.q), _pf(args.r)
    worst = 0.0
    for P in random_polygons(args.trials, args.seed):
        dev = np.linalg.norm(product_apply(p, q, r, P) - eval_point(r, P).value)
        worst = max(worst, float(dev) / P.diameter)
    passed = worst < args.tol
    _emit({"triple": [args.p, args.q, args.r], "trials": args.trials,
           "max_deviation": worst, "tolerance": args.tol, "passed": passed})
    return 0 if passed else 1


def run_command(argv) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)

    if args.cmd == "point":
        P = parse_spec(args.body)
        res = eval_point(_point_function(args), P)
        _emit({"id": args.id, "value": res.value.tolist(),
               "iterations": res.iterations, "residual": res.residual})
        return 0

    if args.cmd == "polar":
        P = parse_spec(args.body)
        z = P.centroid if args.z is None else args.z
        Q = polar_about(P, z, translate=args.translate)
        _emit(serialize.polygon_to_dict(Q), args.svg, (P, Q))
        return 0

    if args.cmd == "shift":
        P = parse_spec(args.body)
        Q = k_sub_z(P, args.z)
        _emit(serialize.polygon_to_dict(Q), args.svg, (P, Q))
        return 0

    if args.cmd == "ellipse":
        P = parse_spec(args.body)
        E = john_ellipse(P) if args.which == "john" else loewner_ellipse(P)
        doc = serialize.ellipse_to_dict(E)
        if args.certify:
            mode = "inscribed" if args.which == "john" else "enclosing"
            cert = verify_john_conditions(P, E, mode)
            doc["certificate"] = {
                "contacts": [[list(u), w] for u, w in cert.contacts],
                "residual_sum": list(cert.residual_sum),
                "residual_identity": cert.residual_identity,
            }
        _emit(doc)
        return 0

    if args.cmd == "region":
        P = parse_spec(args.body)
        fn = {"floating": regions.floating_body,
              "illumination": regions.illumination_body,
              "santalo": regions.santalo_region,
              "john": regions.john_region,
              "symcore": regions.symcore_region}[args.which]
        R = fn(P, args.param, args.rays)
        doc = serialize.polygon_to_dict(R)
        doc["meta"] = {"rays": args.rays, "param": args.param,
                       "map": args.which}
        _emit(doc, args.svg, (P, R))
        return 0

    if args.cmd == "dual-check":
        return _dual_check(args)

    if args.cmd == "product-check":
        return _product_check(args)

    if args.cmd == "invariance":
        P = parse_spec(args.body)
        dev = invariance_check(_point_function(args), P, args.trials, args.seed)
        passed = dev < args.tol
        _emit({"id": args.id, "max_deviation": dev, "trials": args.trials,
               "tolerance": args.tol, "passed": passed})
        return 0 if passed else 1

    if args.cmd == "preimage":
        C = parse_spec(args.body)
        z = polar_preimage(_point_function(args), C, args.init)
        resid = float(np.linalg.norm(
            eval_point(_point_function(args), polar_about(C, z)).value))
        _emit({"z": z.tolist(), "residual": resid})
        return 0

    if args.cmd == "counterexample":
        try:
            cert = noninjective.certify(args.eta, args.eps)
        except GeometryError as exc:
            _emit({"passed": False, "error": str(exc)})
            return 1
        _emit(cert.to_dict())
        return 0

    if args.cmd == "iterate-product":
        P = parse_spec(args.body)
        p, r = _pf(args.p), _pf(args.r)
        values = [product_iterate(p, r, P, k).tolist()
                  for k in range(args.k + 1)]
        _emit({"p": args.p, "r": args.r, "k": args.k, "values": values})
        return 0

    return 2


def main() -> None:
    try:
        sys.exit(run_command(sys.argv[1:]))
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)


if __name__ == "__main__":
    main()
