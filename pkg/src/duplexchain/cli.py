"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails or output cannot be
written, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace

import numpy as np

from . import fileio, figures, svg
from .chain import ChainConfig, FieldSign, make_qubit
from .exceptions import DomainError
from .fidelity import end_fidelities
from .oracle import MAX_SITES, compare_case, energy_audit
from .propagator import mode_table
from .sweep import End, Experiment, Grid, SweepSpec, SweepTable, TimeWindow, run_sweep

TOLERANCE = 1e-9


class UsageError(Exception):
    pass


def _angle(text):
    try:
        return fileio.parse_angle(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sites(text):
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("chain and states")
    g.add_argument("--config", help="YAML experiment file; flags override its values")
    g.add_argument("--n", type=int, help="number of sites N")
    g.add_argument("--coupling", type=float, help="coupling J (default 1.0)")
    g.add_argument("--h-field", type=float, help="transverse field h")
    g.add_argument("--field-sign", choices=["eq3", "eq1"],
                   help="eq3: E_m = 2h - 2J cos q_m (default); eq1: -h sum sigma_z literally")
    for name in ("theta1", "phi1", "theta2", "phi2"):
        g.add_argument(f"--{name}", type=_angle, help="radians, or e.g. 0.6pi")
    g.add_argument("--t-min", type=float)
    g.add_argument("--t-max", type=float)
    g.add_argument("--dt", type=float, help="time step (coarse search step for sweeps)")
    g.add_argument("--end", choices=["alice", "bob"], help="receiving end to maximise")
    g.add_argument("--out", help="output file (directory for reproduce)")
    g.add_argument("--workers", type=int, help="worker processes for sweeps")

    grids = argparse.ArgumentParser(add_help=False)
    gg = grids.add_argument_group("sweep grids")
    gg.add_argument("--theta-count", type=int, help="points per axis of the theta grid")
    gg.add_argument("--dphi-count", type=int, help="points in the phase scan")
    gg.add_argument("--sites", type=_sites, help="chain lengths for the length scan, e.g. 5,9,17")
    gg.add_argument("--inner-count", type=int, help="points per axis of Bob's state grid")
    gg.add_argument("--refine-count", type=int, help="points per axis in the refinement pass")
    gg.add_argument("--svg", help="also write a plot to this path")

    parser = argparse.ArgumentParser(prog="duplexchain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fidelity", parents=[common], help="F_bob and F_alice on a time grid")
    sub.add_parser("sweep-theta", parents=[common, grids], help="F_max over (theta1, theta2)")
    sub.add_parser("sweep-phase", parents=[common, grids], help="F_max versus phi2 - phi1")
    sub.add_parser("sweep-length", parents=[common, grids], help="F_max versus chain length")
    rep = sub.add_parser("reproduce", parents=[common, grids], help="regenerate a figure panel")
    rep.add_argument("figure", choices=figures.FIGURES)
    oc = sub.add_parser("oracle-check", parents=[common],
                        help="compare closed forms with dense exact diagonalisation")
    oc.add_argument("--cases", type=int, default=20)
    oc.add_argument("--seed", type=int, default=0)
    return parser


def _spec_from_args(args, base: SweepSpec) -> tuple[SweepSpec, str | None, int]:
    out, workers = None, 1
    if args.config:
        cfg = fileio.load_config(args.config)
        base, out, workers = cfg.spec, cfg.out, cfg.workers

    chain_kw = {}
    for flag, key in (("n", "n_sites"), ("coupling", "coupling"),
                      ("h_field", "field"), ("field_sign", "field_sign")):
        if getattr(args, flag, None) is not None:
            chain_kw[key] = getattr(args, flag)
    chain = base.chain.with_(**chain_kw) if chain_kw else base.chain

    window = base.window
    wkw = {k: getattr(args, a) for a, k in (("t_min", "t_min"), ("t_max", "t_max"), ("dt", "coarse_step"))
           if getattr(args, a, None) is not None}
    if wkw:
        window = replace(window, **wkw)

    kw = dict(chain=chain, window=window)
    for name in ("theta1", "phi1", "theta2", "phi2"):
        if getattr(args, name, None) is not None:
            kw[name] = getattr(args, name)
    if getattr(args, "end", None):
        kw["end"] = End(args.end)
    if getattr(args, "theta_count", None):
        kw["theta1_grid"] = replace(base.theta1_grid, count=args.theta_count)
        kw["theta2_grid"] = replace(base.theta2_grid, count=args.theta_count)
    if getattr(args, "dphi_count", None):
        kw["dphi_grid"] = replace(base.dphi_grid, count=args.dphi_count)
    if getattr(args, "sites", None):
        kw["sites"] = args.sites
    if getattr(args, "inner_count", None):
        kw["inner_theta_grid"] = replace(base.inner_theta_grid, count=args.inner_count)
        kw["inner_phi_grid"] = replace(base.inner_phi_grid, count=args.inner_count)
    if getattr(args, "refine_count", None):
        kw["refine_count"] = args.refine_count
    spec = replace(base, **kw)
    if args.out is not None:
        out = args.out
    if args.workers is not None:
        workers = args.workers
    return spec, out, workers


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_fidelity(args) -> int:
    # the plain fidelity trace starts at t = 0 unless told otherwise
    base = replace(SweepSpec(), window=TimeWindow(0.0, 50.0, 0.1))
    spec, out, _ = _spec_from_args(args, base)
    w = spec.window
    count = int(math.floor((w.t_max - w.t_min) / w.coarse_step + 1e-9)) + 1
    times = w.t_min + w.coarse_step * np.arange(count)
    s1 = make_qubit(spec.theta1, spec.phi1)
    s2 = make_qubit(spec.theta2, spec.phi2)
    f1, fn = mode_table(spec.chain).end_rows(times)
    bob, alice = end_fidelities(f1, fn, s1, s2)
    _write(fileio.csv_text(("t", "f_bob", "f_alice"), zip(times, bob, alice)), out)
    return 0


def render(table: SweepTable, experiment: Experiment, title: str) -> str:
    if experiment is Experiment.THETA_GRID:
        t1 = np.unique(table.column("theta1"))
        t2 = np.unique(table.column("theta2"))
        values = table.column("f_max").reshape(len(t1), len(t2))
        # x axis theta1 / pi, y axis theta2 / pi
        return svg.heatmap(values.T, t1 / math.pi, t2 / math.pi, title,
                           "theta1 / pi", "theta2 / pi")
    if experiment is Experiment.PHASE_SCAN:
        return svg.lineplot(table.column("dphi") / math.pi, {"F_max": table.column("f_max")},
                            title, "dphi / pi", "F_max")
    if experiment is Experiment.LENGTH_SCAN:
        return svg.lineplot(table.column("n"), {
            "with Bob": table.column("f_max_with_bob"),
            "without Bob": table.column("f_max_without_bob"),
        }, title, "N", "F_max", markers=True)
    raise DomainError(f"nothing to plot for {experiment.value}")


def _sweep(args, experiment: Experiment) -> int:
    spec, out, workers = _spec_from_args(args, SweepSpec(experiment))
    spec = replace(spec, experiment=experiment)
    table = run_sweep(spec, workers)
    _write(fileio.table_csv(table), out)
    if args.svg:
        _write(render(table, experiment, experiment.value), args.svg)
    return 0


def cmd_reproduce(args) -> int:
    spec, out, workers = _spec_from_args(args, figures.figure_spec(args.figure))
    outdir = out or "."
    os.makedirs(outdir, exist_ok=True)
    table = run_sweep(spec, workers)
    c = spec.chain
    title = f"{args.figure}: N={c.n_sites}, h={c.field:g}" if spec.experiment is not Experiment.LENGTH_SCAN \
        else f"{args.figure}: h={c.field:g}"
    _write(fileio.table_csv(table), os.path.join(outdir, f"{args.figure}.csv"))
    _write(render(table, spec.experiment, title),
           args.svg or os.path.join(outdir, f"{args.figure}.svg"))
    print(f"wrote {args.figure}.csv and {args.figure}.svg to {outdir}", file=sys.stderr)
    return 0


def cmd_oracle_check(args) -> int:
    n = args.n if args.n is not None else 4
    if n > MAX_SITES:
        raise UsageError(f"resource error: dense oracle supports at most {MAX_SITES} sites, got {n}")
    sign = FieldSign.parse(args.field_sign or "eq3")
    coupling = args.coupling if args.coupling is not None else 1.0
    t_hi = args.t_max if args.t_max is not None else 60.0
    rng = np.random.default_rng(args.seed)

    worst_amp = worst_fid = worst_energy = 0.0
    failures = []
    for _ in range(args.cases):
        h = args.h_field if args.h_field is not None else rng.uniform(0.0, 1.5)
        cfg = ChainConfig(n, coupling, float(h), sign)
        s1 = make_qubit(args.theta1 if args.theta1 is not None else rng.uniform(0, math.pi),
                        args.phi1 if args.phi1 is not None else rng.uniform(0, 2 * math.pi))
        s2 = make_qubit(args.theta2 if args.theta2 is not None else rng.uniform(0, math.pi),
                        args.phi2 if args.phi2 is not None else rng.uniform(0, 2 * math.pi))
        t = float(rng.uniform(0.0, t_hi))
        rep = compare_case(cfg, s1, s2, t)
        e_dev = energy_audit(cfg)
        worst_amp = max(worst_amp, rep.amplitude_dev)
        worst_fid = max(worst_fid, rep.fidelity_dev)
        worst_energy = max(worst_energy, e_dev)
        if max(rep.amplitude_dev, rep.fidelity_dev, e_dev) > TOLERANCE:
            failures.append((cfg, s1, s2, t, rep, e_dev))

    print(f"oracle-check N={n} cases={args.cases} field_sign={sign.value} seed={args.seed}")
    print(f"max single-excitation energy deviation from 2h - 2J cos(q_m): {worst_energy:.3e}")
    if worst_energy > TOLERANCE:
        print("single-excitation energy MISMATCH: the dense Hamiltonian's field sign "
              "does not reproduce E_m = 2h - 2J cos(q_m)")
    print(f"max amplitude deviation: {worst_amp:.3e}")
    print(f"max fidelity deviation: {worst_fid:.3e}")
    if failures:
        cfg, s1, s2, t, rep, e_dev = failures[0]
        print(f"FAIL ({len(failures)} of {args.cases} cases); first offending case: "
              f"N={cfg.n_sites} J={cfg.coupling!r} h={cfg.field!r} theta1={s1.theta!r} "
              f"phi1={s1.phi!r} theta2={s2.theta!r} phi2={s2.phi!r} t={t!r} "
              f"amp_dev={rep.amplitude_dev:.3e} fid_dev={rep.fidelity_dev:.3e} "
              f"energy_dev={e_dev:.3e}")
        return 1
    print("PASS")
    return 0


COMMANDS = {
    "fidelity": cmd_fidelity,
    "sweep-theta": lambda a: _sweep(a, Experiment.THETA_GRID),
    "sweep-phase": lambda a: _sweep(a, Experiment.PHASE_SCAN),
    "sweep-length": lambda a: _sweep(a, Experiment.LENGTH_SCAN),
    "reproduce": cmd_reproduce,
    "oracle-check": cmd_oracle_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"duplexchain: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"duplexchain: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
