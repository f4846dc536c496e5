"""Trajectories and decay checks along them.

Three bounds are checked on a fixed RK4 grid:

- velocity decay, ``|f(x(t))| <= |f(x(0))| exp(-c t)``;
- pairwise decay, ``|x(t) - xi(t)| <= |x(0) - xi(0)| exp(-c t)``;
- the slope inequality ``dV/dt <= mu(J(x)) V`` for ``V = |f(x)|``, together
  with the chain rule ``d/dt f(x(t)) = J(x) f(x)``.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dynsys import DynamicalSystem, _state, eval_jacobian, eval_velocity
from .errors import BlowUpError, CoarseGridError, DimensionError, NewtonStagnationError, NumericalError
from .measure import NormSpec, induced_norm, matrix_measure, vector_norm

__all__ = [
    "Trajectory",
    "VerificationVerdict",
    "ClassKSpec",
    "rk4_step",
    "integrate",
    "default_step",
    "find_equilibrium",
    "lyapunov_series",
    "verify_theorem1",
    "verify_pair_contraction",
    "dini_slope_check",
]


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    system_name: str
    step_size: float
    method: str = "rk4"

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise DimensionError("times and states differ in length")

    def __len__(self):
        return len(self.times)

    @property
    def dimension(self):
        return self.states.shape[1]


@dataclass(frozen=True)
class VerificationVerdict:
    passed: bool
    worst_ratio: float
    worst_time: float
    tolerance_used: float
    bound_kind: str


@dataclass(frozen=True)
class ClassKSpec:
    """rho(y) = alpha * y**p with alpha > 0, p >= 1."""

    kind: str = "identity"
    alpha: float = 1.0
    p: float = 1.0

    def __post_init__(self):
        if self.kind == "identity":
            object.__setattr__(self, "alpha", 1.0)
            object.__setattr__(self, "p", 1.0)
        elif self.kind == "power":
            object.__setattr__(self, "alpha", 1.0)
        elif self.kind != "scaled":
            raise ValueError(f"unknown class-K kind {self.kind!r}")
        if not (self.alpha > 0 and self.p >= 1 and math.isfinite(self.alpha) and math.isfinite(self.p)):
            raise ValueError(f"need alpha > 0 and p >= 1, got alpha={self.alpha}, p={self.p}")

    def __call__(self, y):
        return self.alpha * np.power(y, self.p)

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind != "identity":
            d["p"] = self.p
        if self.kind == "scaled":
            d["alpha"] = self.alpha
        return d

    @classmethod
    def from_dict(cls, d):
        if d is None:
            return cls()
        return cls(d.get("kind", "identity"), float(d.get("alpha", 1.0)), float(d.get("p", 1.0)))


def rk4_step(f, x, h):
    k1 = f(x)
    k2 = f(x + 0.5 * h * k1)
    k3 = f(x + 0.5 * h * k2)
    k4 = f(x + h * k3)
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _time_grid(t_final, dt):
    ratio = t_final / dt
    n = round(ratio)
    if abs(ratio - n) > 1e-9 * max(1.0, ratio):
        n = math.ceil(ratio)
    times = np.arange(n + 1, dtype=float) * dt
    times[-1] = t_final
    return times


def integrate(sys: DynamicalSystem, x0, t_final: float, dt: float) -> Trajectory:
    """Classical fixed-step RK4 from t=0 to ``t_final``; the last step is shortened to land on it."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    if not t_final > 0:
        raise ValueError("t_final must be positive")
    if dt > t_final:
        raise ValueError("dt must not exceed t_final")
    x = _state(sys, x0)
    L = induced_norm(eval_jacobian(sys, x), NormSpec.l2())
    if dt * L > 0.1:
        warnings.warn(f"dt*||J(x0)|| = {dt * L:.3g} > 0.1; RK4 accuracy may suffer", RuntimeWarning)

    def f(y):
        return np.asarray(sys.velocity(y), dtype=float)

    times = _time_grid(t_final, dt)
    states = np.empty((len(times), sys.dimension))
    states[0] = x
    for k in range(1, len(times)):
        x = rk4_step(f, x, times[k] - times[k - 1])
        if not np.isfinite(x).all():
            raise BlowUpError(f"state became non-finite at t={times[k]:.6g}", time=float(times[k]))
        states[k] = x
    return Trajectory(times, states, sys.name, float(dt))


def default_step(sys, x0, rate=None):
    """Default (t_final, dt): 10 decay constants, dt = min(0.01, 0.05/|mu_L2(J(x0))|)."""
    mu = abs(matrix_measure(eval_jacobian(sys, x0), NormSpec.l2()).value)
    dt = 0.01 if mu == 0 else min(0.01, 0.05 / mu)
    t_final = 10.0 / rate if rate and rate > 0 else 10.0
    return t_final, dt


def find_equilibrium(
    sys: DynamicalSystem,
    x0,
    tol: float = 1e-10,
    norm: NormSpec = None,
    dt: float = None,
    max_time: float = 200.0,
):
    """Locate the unique zero of f by flowing then Newton.

    Intended for systems that are contractive (certified or assumed); for
    such systems the flow converges from anywhere while plain Newton need
    not.  The flow is run until ``|f| < 1e3 * tol``, then a damped Newton
    iteration (step halving, at most 30 times) drives ``|f|`` below ``tol``.
    """
    norm = norm or NormSpec.l2()
    x = _state(sys, x0)
    if dt is None:
        _, dt = default_step(sys, x)

    def vnorm(y):
        return vector_norm(eval_velocity(sys, y), norm)

    def f(y):
        return np.asarray(sys.velocity(y), dtype=float)

    t = 0.0
    v = vnorm(x)
    while v >= 1e3 * tol and t < max_time:
        for _ in range(100):
            x = rk4_step(f, x, dt)
        if not np.isfinite(x).all():
            raise BlowUpError(f"flow diverged before t={t + 100 * dt:.6g}", time=t)
        t += 100 * dt
        v = vnorm(x)

    for _ in range(100):
        if v <= tol:
            return x
        step = np.linalg.solve(eval_jacobian(sys, x), -eval_velocity(sys, x))
        lam = 1.0
        for _ in range(31):
            cand = x + lam * step
            if np.isfinite(cand).all():
                vc = vnorm(cand)
                if vc < v:
                    break
            lam *= 0.5
        else:
            raise NewtonStagnationError(f"no decrease of |f| from {v:.3e} after 30 halvings")
        x, v = cand, vc
    if v <= tol:
        return x
    raise NewtonStagnationError(f"|f| = {v:.3e} still above tol={tol:g} after 100 Newton steps")


def lyapunov_series(traj: Trajectory, sys: DynamicalSystem, norm: NormSpec, rho: ClassKSpec = None):
    """List of ``(t_k, rho(|f(x_k)|))``."""
    rho = rho or ClassKSpec()
    out = []
    for t, x in zip(traj.times, traj.states):
        out.append((float(t), float(rho(vector_norm(eval_velocity(sys, x), norm)))))
    return out


def _decay_verdict(times, values, c, tol, kind):
    v0 = values[0]
    eps_abs = 1e-12 * (1.0 + v0)
    if v0 == 0.0 and np.any(values[1:] > 0.0):
        raise NumericalError(f"{kind}: starts at zero but later values are nonzero (integration error)")
    bound = v0 * np.exp(-c * times) + eps_abs
    ratios = values / bound
    k = int(np.argmax(ratios))
    worst = float(ratios[k])
    return VerificationVerdict(bool(worst <= 1.0 + tol), worst, float(times[k]), float(tol), kind)


def verify_theorem1(traj: Trajectory, sys: DynamicalSystem, norm: NormSpec, c: float, tol: float):
    """Check ``|f(x(t_k))| <= |f(x(0))| exp(-c t_k)`` at every sample."""
    if not c > 0:
        raise ValueError("c must be positive")
    V = np.array([v for _, v in lyapunov_series(traj, sys, norm)])
    return _decay_verdict(traj.times, V, c, tol, "velocity_decay")


def verify_pair_contraction(traj_a: Trajectory, traj_b: Trajectory, norm: NormSpec, c: float, tol: float):
    if not c > 0:
        raise ValueError("c must be positive")
    if traj_a.system_name != traj_b.system_name:
        raise ValueError("trajectories come from different systems")
    if len(traj_a) != len(traj_b) or not np.array_equal(traj_a.times, traj_b.times):
        raise ValueError("trajectories are on different time grids")
    D = np.array([vector_norm(a - b, norm) for a, b in zip(traj_a.states, traj_b.states)])
    return _decay_verdict(traj_a.times, D, c, tol, "pairwise_decay")


def dini_slope_check(traj: Trajectory, sys: DynamicalSystem, norm: NormSpec, tol: float):
    """Discretized ``V' <= mu(J) V`` and ``d/dt f = J f`` at interior samples.

    With ``tol_k = tol * (1 + |mu_k| V_k)``, sample k passes when the forward
    difference of V exceeds ``mu_k V_k`` by at most ``tol_k`` and the chain
    rule residual is at most ``tol_k``.  ``worst_ratio`` is 1 plus the
    largest excess divided by ``1 + |mu_k| V_k``.
    """
    F = np.array([eval_velocity(sys, x) for x in traj.states])
    V = np.array([vector_norm(f, norm) for f in F])
    Js = [eval_jacobian(sys, x) for x in traj.states]
    mu = np.array([matrix_measure(J, norm).value for J in Js])
    dts = np.diff(traj.times)
    if dts.size and float(np.max(dts) * np.max(np.abs(mu))) > 0.05:
        raise CoarseGridError(
            f"dt*max|mu| = {np.max(dts) * np.max(np.abs(mu)):.3g} exceeds 0.05; refine the trajectory"
        )

    worst, worst_t = -np.inf, float(traj.times[0])
    for k in range(1, len(traj) - 1):
        dt = dts[k]
        scale = 1.0 + abs(mu[k]) * V[k]
        slope_excess = (V[k + 1] - V[k]) / dt - mu[k] * V[k]
        resid = vector_norm((F[k + 1] - F[k]) / dt - Js[k] @ F[k], norm)
        e = max(slope_excess, resid) / scale
        if e > worst:
            worst, worst_t = e, float(traj.times[k])
    if not np.isfinite(worst):
        worst = 0.0
    ratio = 1.0 + worst
    return VerificationVerdict(bool(ratio <= 1.0 + tol), float(ratio), worst_t, float(tol), "dini_slope")
