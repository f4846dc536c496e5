"""Randomized audit of  mu_P(A) < -c  <=>  PA + A^T P + 2cP < 0, including draws placed near the boundary."""

import argparse
import collections

import numpy as np

from contraction_kit.certify import equivalence_audit, random_audit_triples


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=5000)
    ap.add_argument("--max-dim", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed + 1)
    tally = collections.Counter()
    near = collections.Counter()
    for A, P, c in random_audit_triples(args.count, seed=args.seed, max_dim=args.max_dim):
        tally[equivalence_audit(A, P, c).status] += 1
        # same (A, P) with c pushed to within 10^[-9, -2] of the boundary
        mu = equivalence_audit(A, P, 0.0).measure_side
        c_near = -mu + rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-9, -2)
        near[equivalence_audit(A, P, c_near).status] += 1

    print(f"uniform c:      {dict(tally)}")
    print(f"near-boundary:  {dict(near)}")
    if tally["fail"] or near["fail"]:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
