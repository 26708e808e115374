"""Command-line interface.

Verbs: certify, simulate, verify, sweep, compare-oracle.  Exit code 0 iff
every applicable check passed; 1 when a check failed (the machine-readable
reason lands in summary.json); 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds, io, oracle, verify
from .core import ValidationError
from .engine import Scenario, simulate


def _load(path: str, samples_per_tick: int | None) -> Scenario:
    scenario = io.load_scenario(path)
    if samples_per_tick is not None:
        scenario = Scenario(
            scenario.plant, scenario.actuator, scenario.controller,
            scenario.x0, scenario.t_end, scenario.xi0,
            samples_per_tick, scenario.seed_note,
        )
    return scenario


def _cmd_certify(args) -> int:
    scenario = _load(args.scenario, None)
    cert = bounds.certify(scenario.plant, scenario.actuator, scenario.controller)
    print(json.dumps(cert.as_dict(), indent=2))
    return 0


def _cmd_simulate(args) -> int:
    scenario = _load(args.scenario, args.samples_per_tick)
    result = io.run_scenario(scenario, outdir=args.outdir, svg=args.svg)
    print(f"wrote {args.outdir}/trajectory.csv and summary.json"
          + (" and plot.svg" if args.svg else ""))
    return 0 if result.passed else 1


def _cmd_verify(args) -> int:
    scenario = _load(args.scenario, args.samples_per_tick)
    result = io.run_scenario(scenario, outdir=args.outdir, svg=args.svg)
    rep = result.report.as_dict()
    print(f"certificate: {'feasible' if result.certificate.feasible else 'infeasible'}"
          + (f" ({result.certificate.reason})" if result.certificate.reason else ""))
    for name in ("envelope", "zeno", "dwell", "contraction"):
        print(f"{name}: {rep[name]}")
    print(f"windup_detected: {rep['windup_detected']}")
    m = result.report.metrics
    print(f"pellets: {m.pellet_count}  steady x in [{m.min_x_steady:.4e}, {m.max_x_steady:.4e}]"
          f"  mean {m.mean_x_steady:.4e}")
    return 0 if result.passed else 1


def _cmd_sweep(args) -> int:
    scenario = _load(args.scenario, args.samples_per_tick)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        print("could not parse --values as comma-separated numbers", file=sys.stderr)
        return 2
    rows = io.sweep(scenario, args.axis, values, outdir=args.outdir)
    print(f"wrote {args.outdir}/sweep.csv ({len(rows)} rows)")
    return 0


def _cmd_compare_oracle(args) -> int:
    scenario = _load(args.scenario, args.samples_per_tick)
    analytic = simulate(scenario)
    step = scenario.actuator.t_c / args.oracle_steps
    numeric = oracle.simulate_numeric(scenario, step)
    result = verify.compare(analytic, numeric, rtol=args.rtol)
    print(f"ticks compared: {result.n_ticks}")
    print(f"max relative deviation: x {result.max_rel_x:.3e}, xi {result.max_rel_xi:.3e}")
    if result.fire_mismatch is not None:
        fm = result.fire_mismatch
        print(f"fire decision mismatch at tick {fm.tick} (t={fm.t:.6f}s)")
    return 0 if result.passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pelletsim",
        description="Deterministic simulator and tuning certificates for "
        "pellet-based plasma density control",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, outdir=True):
        p.add_argument("scenario", help="scenario JSON file")
        p.add_argument("--samples-per-tick", type=int, default=None, metavar="N")
        if outdir:
            p.add_argument("-o", "--outdir", default="out")
            p.add_argument("--svg", action="store_true", help="also render plot.svg")

    add_common(sub.add_parser("certify", help="print the tuning certificate"), outdir=False)
    add_common(sub.add_parser("simulate", help="run and write artifacts"))
    add_common(sub.add_parser("verify", help="run, check, and report"))
    p_sweep = sub.add_parser("sweep", help="rerun over a parameter axis")
    add_common(p_sweep)
    p_sweep.add_argument("--axis", choices=("delta", "t_c", "r"), required=True)
    p_sweep.add_argument("--values", required=True, help="comma-separated numbers")
    p_cmp = sub.add_parser("compare-oracle", help="cross-check against RK4 integration")
    add_common(p_cmp, outdir=False)
    p_cmp.add_argument("--oracle-steps", type=int, default=1000, metavar="N")
    p_cmp.add_argument("--rtol", type=float, default=1e-6)

    args = parser.parse_args(argv)
    handlers = {
        "certify": _cmd_certify,
        "simulate": _cmd_simulate,
        "verify": _cmd_verify,
        "sweep": _cmd_sweep,
        "compare-oracle": _cmd_compare_oracle,
    }
    try:
        return handlers[args.command](args)
    except (io.ParseError, io.SchemaError, io.EmptyAxis, ValidationError,
            oracle.StepTooCoarse, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
