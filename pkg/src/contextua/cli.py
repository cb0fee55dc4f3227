"""Command line front end.

Exit status: 0 on success, 2 when the computation ran but the criterion came
out false (not measurable, violations found), 1 on usage or runtime errors.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import lsw, noncontextual
from .bloch import TOL
from .errors import ContextuaError
from .fermat import fermat_torricelli
from .pairwise import build_optimal_pairwise_jm, max_anticorrelation_pair, orthogonal_direction, pairwise_compat
from .triplewise import LambdaSystem, build_triplewise_jm, equal_length_config, trine, triplewise_compat

EXIT_OK, EXIT_ERROR, EXIT_FALSE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _vector(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a vector: {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return np.array(parts)


def _tolerance():
    raw = os.environ.get("CONTEXTUA_TOL")
    if raw is None:
        return TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"CONTEXTUA_TOL={raw!r} is not a number") from None
    if not tol >= 0:
        raise UsageError("CONTEXTUA_TOL must be non-negative")
    return tol


def _add_observables(p, count):
    for k in range(1, count + 1):
        p.add_argument(f"--lambda{k}", type=_vector, metavar="X,Y,Z")
    p.add_argument("--trine", action="store_true", help="trine observables of sharpness --eta")
    p.add_argument("--eta", type=float)
    p.add_argument("--phi1", type=float, help="angle (radians) of lambda1 from lambda3")
    p.add_argument("--phi2", type=float, help="angle (radians) of lambda2 from lambda3")
    p.add_argument("--degrees", action="store_true", help="read --phi1/--phi2 in degrees")


def _observables(args, count, minimum=None):
    minimum = count if minimum is None else minimum
    given = [getattr(args, f"lambda{k}", None) for k in range(1, count + 1)]
    if args.trine or args.phi1 is not None or args.phi2 is not None:
        if any(v is not None for v in given):
            raise UsageError("give either --lambdaN vectors or an angle specification, not both")
        if args.eta is None:
            raise UsageError("--eta is required with --trine or --phi1/--phi2")
        if args.trine:
            lam = trine(args.eta)
        else:
            if args.phi1 is None or args.phi2 is None:
                raise UsageError("--phi1 and --phi2 go together")
            scale = math.pi / 180 if args.degrees else 1.0
            lam = equal_length_config(args.eta, args.phi1 * scale, args.phi2 * scale)
        return list(lam[:count])
    present = [v for v in given if v is not None]
    if given[: len(present)] != present or len(present) < minimum:
        raise UsageError(f"need --lambda1 .. --lambda{minimum} (x,y,z)")
    return present


def _cmd_check_pairwise(args, tol):
    l1, l2 = _observables(args, 2)
    h, ok = pairwise_compat(l1, l2, tol)
    out = {"H": h, "measurable": bool(ok), "lambdas": [l1.tolist(), l2.tolist()]}
    if ok:
        out["max_anticorrelation"] = max_anticorrelation_pair(l1, l2, tol)
    return out, ok


def _cmd_check_triplewise(args, tol):
    check = triplewise_compat(*_observables(args, 3), tol=tol)
    return check.to_dict(), check.measurable


def _cmd_build_joint(args, tol):
    lam = _observables(args, 3, minimum=2)
    if len(lam) == 2:
        h, ok = pairwise_compat(*lam, tol)
        if not ok:
            return {"measurable": False, "H": h}, False
        r = orthogonal_direction(*lam)
        out = build_optimal_pairwise_jm(*lam, r, tol).to_dict()
        out["state"] = r.tolist()
        return out, True
    check = triplewise_compat(*lam, tol=tol)
    if not check.measurable:
        return check.to_dict(), False
    return build_triplewise_jm(*lam, tol=tol).to_dict(), True


def _cmd_ft_point(args, tol):
    if args.point:
        pts = np.array(args.point)
        label = "points"
    else:
        pts = LambdaSystem(*_observables(args, 3)).big_lambdas
        label = "big_lambdas"
    ft = fermat_torricelli(pts)
    return {
        label: pts.tolist(),
        "ft_point": ft.point.tolist(),
        "total_distance": ft.total_distance,
        "at_vertex": ft.at_vertex,
        "iterations": ft.iterations,
        "degenerate": ft.degenerate,
    }, True


def _cmd_classical_sim(args, tol):
    report = noncontextual.mc_verify_theorem2(args.trials, args.seed)
    return report, report["violations"] == 0


def _cmd_lsw_scan(args, tol):
    scan = lsw.violation_scan(args.eta_min, args.eta_max, args.steps)
    return scan, True


def _cmd_counterexample(args, tol):
    report = lsw.counterexample_check()
    return report, report["passed"]


COMMANDS = {
    "check-pairwise": _cmd_check_pairwise,
    "check-triplewise": _cmd_check_triplewise,
    "build-joint": _cmd_build_joint,
    "classical-sim": _cmd_classical_sim,
    "lsw-scan": _cmd_lsw_scan,
    "counterexample": _cmd_counterexample,
    "ft-point": _cmd_ft_point,
}


def build_parser():
    parser = _Parser(prog="contextua", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), help="csv is available for lsw-scan only")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-pairwise", parents=[common], help="two-observable joint measurability")
    _add_observables(p, 2)
    p = sub.add_parser("check-triplewise", parents=[common], help="three-observable joint measurability")
    _add_observables(p, 3)
    p = sub.add_parser("build-joint", parents=[common], help="explicit joint POVM for 2 or 3 observables")
    _add_observables(p, 3)
    p = sub.add_parser("ft-point", parents=[common], help="Fermat-Torricelli point")
    _add_observables(p, 3)
    p.add_argument("--point", type=_vector, action="append", metavar="X,Y,Z", help="raw point (repeatable)")
    p = sub.add_parser("classical-sim", parents=[common], help="Monte Carlo check of the noncontextual bound")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, required=True)
    p = sub.add_parser("lsw-scan", parents=[common], help="violation curve data")
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--eta-min", type=float, default=0.0)
    p.add_argument("--eta-max", type=float, default=1.0)
    sub.add_parser("counterexample", parents=[common], help="non-measurable triple without violation")
    return parser


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def render(result, fmt):
    if isinstance(result, lsw.ScanResult):
        if fmt in (None, "csv"):
            return result.to_csv()
        result = result.to_dict()
    elif fmt == "csv":
        raise UsageError("csv output is only available for lsw-scan")
    return json.dumps(result, indent=2, default=_json_default) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        tol = _tolerance()
        result, ok = COMMANDS[args.command](args, tol)
        text = render(result, args.format)
    except UsageError as exc:
        print(f"contextua: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ContextuaError, ValueError) as exc:
        print(f"contextua: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
