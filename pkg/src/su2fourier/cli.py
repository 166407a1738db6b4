"""Command-line harness: divergence growth tables, convergence sweeps,
modulus-of-continuity scans, and the built-in selftest.

All commands are deterministic for fixed inputs and thread count; CSV and
JSON outputs are byte-identical across runs.
"""

import argparse
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .group import SphericalCoords, from_spherical
from .quadrature import HaarRule, gauss_legendre, periodic_trapezoid, theta_rule_for
from .records import ExperimentRecord, write_records
from .fields import parse_field_spec
from .selftest import run_selftest
from .sphere import l2_mean_difference
from .spectral import reduced_from_profile, spherical_means
from .witness import divergence_table

DIVERGENCE_COLUMNS = ["n", "lambda_abs", "lower_bound", "l1_reference",
                      "lip_norm_bound", "ratio_to_2n3"]
CONVERGE_COLUMNS = ["N", "point", "s_n", "abs_error"]
MODULUS_COLUMNS = ["t", "omega", "criterion_estimate", "criterion_converged"]


class CliError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def _parse_point(text) -> SphericalCoords:
    parts = text.split(",")
    if len(parts) != 3:
        raise CliError(f"bad point spec {text!r}: expected phi,theta,psi")
    try:
        coords = SphericalCoords(*(float(p) for p in parts))
        coords.validate()
    except ValueError as exc:
        raise CliError(f"bad point spec {text!r}: {exc}")
    return coords


def _parse_n_list(text):
    try:
        values = [int(p) for p in text.split(",") if p]
    except ValueError:
        raise CliError(f"bad degree list {text!r}: expected comma-separated integers")
    if not values or any(n < 0 for n in values):
        raise CliError(f"bad degree list {text!r}: need nonnegative degrees")
    return values


def _strict_gate(records, strict):
    warned = [w for rec in records for w in rec.warnings]
    if strict and warned:
        raise CliError("quadrature warnings with --strict:\n  " + "\n  ".join(warned), code=1)


def cmd_divergence(args):
    n_list = _parse_n_list(args.n)
    points = [_parse_point(p) for p in args.point or ["0,0,0"]]
    theta_rule = gauss_legendre(args.nodes, 0.0, math.pi) if args.nodes else None
    records = divergence_table(n_list, points, alpha=args.alpha, theta_rule=theta_rule,
                               threads=args.threads)
    _strict_gate(records, args.strict)
    write_records(records, DIVERGENCE_COLUMNS, args.out, args.format)
    return 0


def cmd_converge(args):
    try:
        f = parse_field_spec(args.field)
    except ValueError as exc:
        raise CliError(str(exc))
    points = [_parse_point(p) for p in args.point or ["0,0,0"]]
    if args.n_max < 1:
        raise CliError("--n-max must be >= 1")
    K = args.nodes
    theta_rule = (gauss_legendre(K, 0.0, math.pi) if K
                  else theta_rule_for(args.n_max, f.theta_breakpoints))
    phi_rule = gauss_legendre(K or 64, 0.0, math.pi)
    psi_rule = periodic_trapezoid(K or 64)

    def one_point(item):
        idx, coords = item
        x = from_spherical(coords)
        t0 = time.perf_counter()
        profile = spherical_means(f, x, theta_rule.nodes, phi_rule, psi_rule)
        fx = f.evaluate(x)
        recs = []
        for N in range(1, args.n_max + 1):
            s = reduced_from_profile(profile, theta_rule, N)
            recs.append(
                ExperimentRecord(
                    experiment="converge",
                    parameters={
                        "N": N,
                        "point": f"{coords.phi:.6g},{coords.theta:.6g},{coords.psi:.6g}",
                        "field": f.name,
                    },
                    outputs={"s_n": s, "abs_error": abs(s - fx)},
                    wall_time=time.perf_counter() - t0,
                )
            )
        return idx, recs

    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        chunks = list(pool.map(one_point, enumerate(points)))
    records = [rec for _, recs in sorted(chunks) for rec in recs]
    _strict_gate(records, args.strict)
    write_records(records, CONVERGE_COLUMNS, args.out, args.format)
    return 0


def cmd_modulus(args):
    try:
        f = parse_field_spec(args.field)
    except ValueError as exc:
        raise CliError(str(exc))
    if not 0.0 < args.t_min < 1.0:
        raise CliError(f"--t-min must lie in (0, 1), got {args.t_min}")
    K = args.nodes or 64
    kwargs = {
        "phi_rule": gauss_legendre(K, 0.0, math.pi),
        "psi_rule": periodic_trapezoid(K),
        "outer_theta_rule": gauss_legendre(K, 0.0, math.pi),
    }
    # one master grid serves the omega table, the criterion integral, and its
    # halved-t_min stability check
    grid = np.geomspace(args.t_min / 2.0, 1.0, 48)
    norms = np.array([l2_mean_difference(f, th, **kwargs) for th in grid])
    omega = np.maximum.accumulate(norms)

    def estimate(lo):
        mask = grid >= lo * (1.0 - 1e-12)
        return float(np.trapezoid(omega[mask] ** 2, np.log(grid[mask])))

    est = estimate(args.t_min)
    converged = abs(estimate(args.t_min / 2.0) - est) <= 0.05 * est + 1e-300
    records = []
    for t, om in zip(grid, omega):
        if t < args.t_min * (1.0 - 1e-12):
            continue
        records.append(
            ExperimentRecord(
                experiment="modulus",
                parameters={"t": float(t), "field": f.name},
                outputs={
                    "omega": float(om),
                    "criterion_estimate": est,
                    "criterion_converged": int(converged),
                },
            )
        )
    _strict_gate(records, args.strict)
    write_records(records, MODULUS_COLUMNS, args.out, args.format)
    return 0


def cmd_selftest(args):
    return run_selftest(args.level)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="su2fourier",
        description="Fourier partial sums, divergence witnesses, and "
        "convergence diagnostics on SU(2)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_out=True):
        if needs_out:
            p.add_argument("--out", required=True, help="output file path")
            p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--nodes", type=int, default=None,
                       help="override 1D quadrature node count")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--strict", action="store_true",
                       help="fail on quadrature warnings")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampled estimators")

    p = sub.add_parser("divergence", help="witness growth table")
    p.add_argument("--n", required=True, help="comma-separated witness degrees")
    p.add_argument("--point", action="append", default=None,
                   help="phi,theta,psi (repeatable; default identity)")
    p.add_argument("--alpha", type=float, default=0.5)
    common(p)
    p.set_defaults(fn=cmd_divergence)

    p = sub.add_parser("converge", help="partial-sum convergence sweep")
    p.add_argument("--field", required=True)
    p.add_argument("--n-max", type=int, default=32)
    p.add_argument("--point", action="append", default=None)
    common(p)
    p.set_defaults(fn=cmd_converge)

    p = sub.add_parser("modulus", help="integral modulus scan and convergence criterion")
    p.add_argument("--field", required=True)
    p.add_argument("--t-min", type=float, default=0.01)
    common(p)
    p.set_defaults(fn=cmd_modulus)

    p = sub.add_parser("selftest", help="run the built-in invariant suite")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
