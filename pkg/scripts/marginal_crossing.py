"""Where does xdot = -x^3 break the velocity envelope |f(x0)| exp(-c t)?

The flow has no uniform contraction rate (J(0) = 0), so every c > 0 fails
eventually.  From x(t) = (1 + 2t)^{-1/2} (x0 = 1), |f| = (1 + 2t)^{-3/2}; the
first crossing solves 1.5 ln(1 + 2t) = c t.  This script compares that
closed-form time with the first failing sample of a numerical check.
"""

import argparse
import math

import numpy as np

from contraction_kit import NormSpec, SystemConfig, make_system
from contraction_kit.simulate import integrate, lyapunov_series


def crossing_time(c, lo=1e-3, hi=1e6):
    g = lambda t: 1.5 * math.log1p(2 * t) - c * t
    # g > 0 just after 0 for c < 3; grow hi until the envelope has been crossed
    while g(hi) > 0:
        hi *= 10
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--c", type=float, nargs="+", default=[0.05, 0.1, 0.2, 0.5])
    ap.add_argument("--dt", type=float, default=0.01)
    args = ap.parse_args()

    sys = make_system(SystemConfig("scalar_cubic_marginal"))
    for c in args.c:
        t_star = crossing_time(c)
        tr = integrate(sys, [1.0], 1.2 * t_star, args.dt)
        V = np.array([v for _, v in lyapunov_series(tr, sys, NormSpec.l2())])
        over = np.nonzero(V > V[0] * np.exp(-c * tr.times) * (1 + 1e-6) + 1e-12 * (1 + V[0]))[0]
        first = tr.times[over[0]] if over.size else float("nan")
        print(f"c={c:<6g} closed-form crossing t*={t_star:10.4f}   first failing sample t={first:10.4f}")


if __name__ == "__main__":
    main()
