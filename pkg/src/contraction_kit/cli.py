"""Command-line front end.

    contraction-kit {measure,certify,simulate,verify,audit-eq10} --config cfg.json
        [--output DIR] [--seed N] [--quiet]

Exit status: 0 pass, 1 verification failure, 2 usage/config error,
3 numerical or I/O error.
"""

import argparse
import json
import os
import sys
import time

import numpy as np

from . import report
from .certify import certify_domain, equivalence_audit, random_audit_triples
from .config import load_config, resolve_seed
from .dynsys import eval_jacobian, make_system
from .errors import NumericalError
from .measure import matrix_measure, vector_norm
from .report import ReportRow, emit_report
from .simulate import (
    default_step,
    dini_slope_check,
    find_equilibrium,
    integrate,
    verify_pair_contraction,
    verify_theorem1,
)

COMMANDS = ("measure", "certify", "simulate", "verify", "audit-eq10")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="contraction-kit", description="Contraction certificates and decay checks")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--quiet", action="store_true")
    return p


def _need(value, what):
    if value is None:
        raise ValueError(f"config is missing {what}")
    return value


class _Run:
    """State shared by the pipelines of one invocation."""

    def __init__(self, cfg, seed, quiet):
        self.cfg = cfg
        self.seed = seed
        self.quiet = quiet
        self.rows = []
        self.trajectories = {}
        self.certifications = {}
        self.extra = []

    def say(self, msg):
        if not self.quiet:
            print(msg)

    def system(self):
        return make_system(_need(self.cfg.system, "'system'"))

    def row(self, command, sysname, norm, t0, **kw):
        r = ReportRow(command, sysname, norm.kind if norm is not None else "", wall_time_seconds=time.perf_counter() - t0, **kw)
        self.rows.append(r)
        return r

    def record_trajectory(self, sysobj, traj):
        norm = self.cfg.norm
        v = np.array([vector_norm(np.asarray(sysobj.velocity(x), dtype=float), norm) for x in traj.states])
        self.trajectories[sysobj.name] = (traj.times, traj.states, v, self.cfg.rho(v))

    def certify(self, sysobj):
        t0 = time.perf_counter()
        box = _need(self.cfg.box, "'box'")
        rep = certify_domain(sysobj, box, self.cfg.norm, self.cfg.plan(self.seed))
        self.certifications[sysobj.name] = rep
        self.row(
            "certify", sysobj.name, self.cfg.norm, t0,
            rate_estimate=rep.rate_estimate, certified=rep.certified, passed=rep.certified,
            sample_count=rep.sample_count,
        )
        self.say(
            f"certify {sysobj.name} [{self.cfg.norm.kind}]: sup mu = {rep.sup_measure:.6g} at "
            f"{np.round(rep.witness, 6).tolist()}, c_hat = {rep.rate_estimate:.6g}, "
            f"certified = {rep.certified} ({rep.caveat}, {rep.sample_count} samples)"
        )
        return rep


def cmd_measure(run):
    cfg = run.cfg
    sysobj = run.system()
    if cfg.points is not None:
        points = cfg.points
    elif cfg.x0 is not None:
        points = [cfg.x0]
    else:
        box = _need(cfg.box, "'points', 'simulation.x0' or 'box'")
        points = [[(a + b) / 2 for a, b in zip(box.lower, box.upper)]]
    for norm in cfg.norms:
        t0 = time.perf_counter()
        mus = []
        for x in points:
            mu = matrix_measure(eval_jacobian(sysobj, x), norm).value
            mus.append(mu)
            run.say(f"mu_{norm.kind}(J({list(x)})) = {mu:.17g}")
        run.row("measure", sysobj.name, norm, t0, rate_estimate=-max(mus), sample_count=len(points))
    return EXIT_OK


def cmd_certify(run):
    rep = run.certify(run.system())
    return EXIT_OK if rep.certified else EXIT_FAIL


def _horizon(run, sysobj, x0, rate):
    t_def, dt_def = default_step(sysobj, x0, rate)
    t_final = run.cfg.t_final if run.cfg.t_final is not None else t_def
    dt = run.cfg.dt if run.cfg.dt is not None else dt_def
    return t_final, dt


def cmd_simulate(run):
    sysobj = run.system()
    x0 = _need(run.cfg.x0, "'simulation.x0'")
    t0 = time.perf_counter()
    t_final, dt = _horizon(run, sysobj, x0, run.cfg.c)
    traj = integrate(sysobj, x0, t_final, dt)
    run.record_trajectory(sysobj, traj)
    run.row("simulate", sysobj.name, run.cfg.norm, t0, sample_count=len(traj))
    run.say(f"simulate {sysobj.name}: {len(traj)} samples to t={t_final:g}, x(T) = {traj.states[-1].tolist()}")
    return EXIT_OK


def cmd_verify(run):
    cfg = run.cfg
    sysobj = run.system()
    norm = cfg.norm
    x0 = np.asarray(_need(cfg.x0, "'simulation.x0'"), dtype=float)
    rep = run.certify(sysobj)
    c = cfg.c if cfg.c is not None else rep.rate_estimate
    if not c > 0:
        run.say(f"verify {sysobj.name}: no positive rate available (c = {c:.6g}); nothing to verify")
        return EXIT_FAIL

    t_final, dt = _horizon(run, sysobj, x0, c)
    t0 = time.perf_counter()
    traj = integrate(sysobj, x0, t_final, dt)
    run.record_trajectory(sysobj, traj)
    v1 = verify_theorem1(traj, sysobj, norm, c, cfg.tol)
    run.row("verify_theorem1", sysobj.name, norm, t0, rate_estimate=c, worst_ratio=v1.worst_ratio,
            passed=v1.passed, sample_count=len(traj))

    t0 = time.perf_counter()
    xi0 = cfg.xi0 if cfg.xi0 is not None else find_equilibrium(sysobj, x0, norm=norm)
    traj_b = integrate(sysobj, xi0, t_final, dt)
    v2 = verify_pair_contraction(traj, traj_b, norm, c, cfg.tol)
    run.row("verify_pair_contraction", sysobj.name, norm, t0, rate_estimate=c, worst_ratio=v2.worst_ratio,
            passed=v2.passed, sample_count=len(traj))

    t0 = time.perf_counter()
    v3 = dini_slope_check(traj, sysobj, norm, cfg.dini_tol)
    run.row("dini_slope_check", sysobj.name, norm, t0, worst_ratio=v3.worst_ratio,
            passed=v3.passed, sample_count=max(len(traj) - 2, 0))

    for v in (v1, v2, v3):
        run.say(
            f"{v.bound_kind:>15}: {'PASS' if v.passed else 'FAIL'} worst_ratio={v.worst_ratio:.12g} "
            f"at t={v.worst_time:.6g} (tol {v.tolerance_used:g}, c={c:.6g})"
        )
    return EXIT_OK if (v1.passed and v2.passed and v3.passed) else EXIT_FAIL


def cmd_audit(run):
    a = run.cfg.audit
    t0 = time.perf_counter()
    if a.get("triples"):
        triples = [(np.asarray(t["A"], float), np.asarray(t["P"], float), float(t["c"])) for t in a["triples"]]
        label = "configured"
    else:
        triples = random_audit_triples(int(a.get("count", 1000)), seed=run.seed, max_dim=int(a.get("max_dim", 5)))
        label = "random"
    records = [equivalence_audit(A, P, c) for A, P, c in triples]
    fails = sum(r.status == "fail" for r in records)
    boundary = sum(r.boundary for r in records)
    run.row("audit-eq10", label, None, t0, passed=fails == 0, sample_count=len(records))
    run.rows[-1].norm_kind = "WeightedL2"
    run.extra.append(("audit_eq10.csv", records))
    run.say(f"audit-eq10: {len(records)} triples, {fails} disagreements, {boundary} boundary")
    return EXIT_OK if fails == 0 else EXIT_FAIL


DISPATCH = {
    "measure": cmd_measure,
    "certify": cmd_certify,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "audit-eq10": cmd_audit,
}


def run_command(argv, environ=None) -> int:
    environ = os.environ if environ is None else environ
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config)
        seed = resolve_seed(args.seed, cfg.seed, environ)
    except UsageError as exc:
        print(f"contraction-kit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"contraction-kit: config not found: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"contraction-kit: malformed JSON config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError) as exc:
        print(f"contraction-kit: bad config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"contraction-kit: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE

    run = _Run(cfg, seed, args.quiet)
    try:
        status = DISPATCH[args.command](run)
    except NumericalError as exc:
        print(f"contraction-kit: numerical error: {exc}", file=sys.stderr)
        status = EXIT_NUMERIC
    except (ValueError, KeyError, TypeError) as exc:
        print(f"contraction-kit: bad config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except np.linalg.LinAlgError as exc:
        print(f"contraction-kit: numerical error: {exc}", file=sys.stderr)
        status = EXIT_NUMERIC

    outdir = args.output or cfg.output_dir
    try:
        emit_report(run.rows, outdir, run.trajectories, run.certifications)
        for name, records in run.extra:
            report.write_audit_dump(os.path.join(outdir, name), records)
    except OSError as exc:
        print(f"contraction-kit: cannot write report: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return status


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
