"""Command-line front end.

    sge run <config.json> [--out DIR]     closed-form run, report + density CSV
    sge compare <config.json>             closed form vs split-step L2 error
    sge entropy <config.json> --samples N entanglement entropy timeline (CSV)
    sge interfere <config.json> --T SEC   +b/-b/+b recombination checks
    sge bch-check [--n N] [--spin S]      factored propagator vs expm

Exit codes: 0 all requested checks pass, 1 a tolerance check failed,
2 invalid input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import harness
from .observables import entanglement_entropy, spin_rdm
from .propagator import evolve_segments, gaussian_hybrid
from .spin_algebra import SpinQN
from .wavepacket import moments

DENSITY_TOL = 1e-4
KICK_REL_TOL = 1e-10
ENTROPY_TOL = 1e-6
BCH_TOL = 1e-6


def _write_csv(path: str, header: str, rows: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{x:.14e}" for x in row) + "\n")


def _print_report(rep: harness.Report) -> None:
    print(f"transit_time_s    {rep.transit_time_s:.6e}")
    for label, dz in rep.deflection_m.items():
        print(f"deflection_m[{label}] {dz:+.6e}")
    sep = "unresolved" if rep.peak_separation_m is None else f"{rep.peak_separation_m:.6e}"
    print(f"peak_separation_m {sep}")
    print(f"entropy_nats      {rep.entropy_nats:.6e}")
    if rep.oracle_l2_error is not None:
        print(f"oracle_l2_error   {rep.oracle_l2_error:.6e}")
    if rep.bch_state_error is not None:
        print(f"bch_state_error   {rep.bch_state_error:.6e}")


def cmd_run(args: argparse.Namespace) -> int:
    sc = harness.load_scenario(args.config)
    if "density" not in sc.outputs:
        sc = dataclasses.replace(sc, outputs=sc.outputs + ("density",))
    rep = harness.run(sc)
    _print_report(rep)

    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "report.json"), "w") as fh:
            json.dump(rep.json_dict(), fh, indent=2)
            fh.write("\n")
        _write_csv(os.path.join(args.out, "density_z.csv"), "z_m,p_per_m", rep.density)
        if rep.entropy_timeline is not None:
            _write_csv(os.path.join(args.out, "entropy_timeline.csv"),
                       "t_s,entropy_nats", rep.entropy_timeline)

    failed = (rep.oracle_l2_error is not None and rep.oracle_l2_error > DENSITY_TOL) or \
             (rep.bch_state_error is not None and rep.bch_state_error > BCH_TOL)
    return 1 if failed else 0


def cmd_compare(args: argparse.Namespace) -> int:
    sc = harness.load_scenario(args.config)
    err = harness.oracle_density_error(sc)
    print(f"oracle_l2_error {err:.6e} (tolerance {args.tol:.1e})")
    return 0 if err <= args.tol else 1


def cmd_entropy(args: argparse.Namespace) -> int:
    sc = harness.load_scenario(args.config)
    timeline = harness.entropy_timeline(sc, args.samples)
    print("t_s,entropy_nats")
    for t, s in timeline:
        print(f"{t:.14e},{s:.14e}")
    return 0


def cmd_interfere(args: argparse.Namespace) -> int:
    sc = harness.load_scenario(args.config)
    cfg = sc.cfg
    segments = harness.interferometer_segments(cfg.beta, args.T)
    sc = dataclasses.replace(sc, segments=segments)

    st0 = gaussian_hybrid(sc.spin, sc.initial_coeffs, cfg)
    st = evolve_segments(st0, list(segments), cfg)

    # momentum scale the first leg imparts to the outermost component
    kick_scale = abs(cfg.hbar * cfg.gamma * cfg.beta * args.T) * max(sc.spin.s, 0.5)
    worst_kick = max(
        abs(moments(p, cfg.hbar).mean_momentum - moments(p0, cfg.hbar).mean_momentum)
        for p, p0 in zip(st.z_packets, st0.z_packets))
    entropy = entanglement_entropy(spin_rdm(st))
    oracle_err = harness.oracle_density_error(sc)

    kick_ok = worst_kick <= KICK_REL_TOL * kick_scale
    entropy_ok = entropy <= ENTROPY_TOL
    oracle_ok = oracle_err <= DENSITY_TOL
    print(f"net_kick_rel    {worst_kick / kick_scale:.3e} "
          f"({'ok' if kick_ok else 'FAIL'}, tolerance {KICK_REL_TOL:.1e})")
    print(f"entropy_nats    {entropy:.3e} "
          f"({'ok' if entropy_ok else 'FAIL'}, tolerance {ENTROPY_TOL:.1e})")
    print(f"oracle_l2_error {oracle_err:.3e} "
          f"({'ok' if oracle_ok else 'FAIL'}, tolerance {DENSITY_TOL:.1e})")
    return 0 if (kick_ok and entropy_ok and oracle_ok) else 1


def cmd_bch_check(args: argparse.Namespace) -> int:
    spins = [SpinQN.parse(args.spin)] if args.spin else [SpinQN(1), SpinQN(2)]
    ok = True
    for spin in spins:
        check = harness.bch_check(spin, n=args.n)
        passed = check.state_error <= args.tol
        ok = ok and passed
        print(f"spin {spin.twice_s}/2: state_error {check.state_error:.3e} "
              f"({'ok' if passed else 'FAIL'}, tolerance {args.tol:.1e}); "
              f"raw operator_error {check.operator_error:.3e} "
              f"(periodic-seam artifact, not gated)")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sge",
                                     description="Spin-z beam splitter simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="closed-form run with report")
    p.add_argument("config")
    p.add_argument("--out", help="directory for report.json and density_z.csv")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="closed form vs split-step density error")
    p.add_argument("config")
    p.add_argument("--tol", type=float, default=DENSITY_TOL)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("entropy", help="entanglement entropy timeline as CSV")
    p.add_argument("config")
    p.add_argument("--samples", type=int, default=33)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("interfere", help="gradient-flip recombination checks")
    p.add_argument("config")
    p.add_argument("--T", type=float, required=True,
                   help="first-leg duration in seconds (legs are T, 2T, T)")
    p.set_defaults(func=cmd_interfere)

    p = sub.add_parser("bch-check", help="factored propagator vs dense expm")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--spin", help="spin as 1/2, 1, 3/2, ... (default: both 1/2 and 1)")
    p.add_argument("--tol", type=float, default=BCH_TOL)
    p.set_defaults(func=cmd_bch_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
