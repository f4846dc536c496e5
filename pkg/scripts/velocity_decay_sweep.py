"""Certify each catalog system on [-R, R]^n, then check |f(x(t))| decay from many initial states.

    python scripts/velocity_decay_sweep.py --starts 20 --radius 2 --csv sweep.csv
"""

import argparse
import csv
import time

import numpy as np

from contraction_kit import NormSpec, SystemConfig, make_system
from contraction_kit.certify import BoxDomain, SamplingPlan, certify_domain
from contraction_kit.simulate import integrate, verify_pair_contraction, verify_theorem1

SYSTEMS = [
    (SystemConfig("linear", {"A": [[-2.0, 1.0], [0.0, -2.0]], "b": [1.0, 0.0]}), NormSpec.l2(), 21),
    (SystemConfig("scalar_cubic_contractive", {"a": 1.0, "b": 1.0}), NormSpec.l2(), 201),
    (SystemConfig("diag_dominant_nl", {"n": 4, "a": 1.0, "eps": 0.25}), NormSpec.linf(), 11),
    (SystemConfig("diag_dominant_nl", {"n": 4, "a": 1.0, "eps": 0.25}), NormSpec.l1(), 11),
    (SystemConfig("linear", {"A": [[-1.0, 2.0], [0.0, -1.0]]}), NormSpec.weighted([[1.0, 0.0], [0.0, 4.0]]), 5),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--starts", type=int, default=10)
    ap.add_argument("--radius", type=float, default=2.0)
    ap.add_argument("--t-final", type=float, default=10.0)
    ap.add_argument("--dt", type=float, default=1e-3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    rows = []
    for cfg, norm, grid in SYSTEMS:
        sys = make_system(cfg)
        box = BoxDomain.cube(sys.dimension, args.radius)
        rep = certify_domain(sys, box, norm, SamplingPlan(grid, 200, seed=args.seed))
        if not rep.certified:
            print(f"{cfg.name} [{norm.kind}]: not certified (sup mu = {rep.sup_measure:.4g}), skipped")
            continue
        c = rep.rate_estimate
        t0 = time.perf_counter()
        worst_v = worst_p = 0.0
        fails = 0
        for _ in range(args.starts):
            xa = rng.uniform(-args.radius, args.radius, sys.dimension)
            xb = rng.uniform(-args.radius, args.radius, sys.dimension)
            a = integrate(sys, xa, args.t_final, args.dt)
            b = integrate(sys, xb, args.t_final, args.dt)
            v = verify_theorem1(a, sys, norm, c, 1e-6)
            p = verify_pair_contraction(a, b, norm, c, 1e-6)
            worst_v = max(worst_v, v.worst_ratio)
            worst_p = max(worst_p, p.worst_ratio)
            fails += (not v.passed) + (not p.passed)
        row = dict(system=cfg.name, norm=norm.kind, c=c, worst_velocity=worst_v, worst_pair=worst_p,
                   failures=fails, seconds=time.perf_counter() - t0)
        rows.append(row)
        print(f"{cfg.name:>26} [{norm.kind:>10}] c={c:.4f}  worst |f| ratio {worst_v:.9f}  "
              f"worst pair ratio {worst_p:.9f}  failures {fails}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    main()
