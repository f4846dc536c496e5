"""Sampled contraction certificates on a box, and the Krasovskii LMI check.

Certificates here are empirical: ``sup mu(J(x))`` is taken over a tensor
grid plus seeded uniform points in a compact box, so every report carries
the caveat ``"empirical-on-box"``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .dynsys import DynamicalSystem, eval_jacobian
from .errors import DimensionError, NumericalError
from .measure import (
    NormSpec,
    _as_square,
    _spd_eig,
    induced_norm,
    matrix_measure,
    symmetric_max_eigenvalue,
)

__all__ = [
    "BoxDomain",
    "SamplingPlan",
    "CertificationReport",
    "AuditRecord",
    "pointwise_rate",
    "sample_points",
    "certify_domain",
    "krasovskii_check",
    "equivalence_audit",
    "random_audit_triples",
]

CAVEAT = "empirical-on-box"


@dataclass(frozen=True)
class BoxDomain:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lower))
        hi = tuple(float(v) for v in np.atleast_1d(self.upper))
        if len(lo) != len(hi) or not lo:
            raise DimensionError("box bounds must be non-empty and of equal length")
        if not all(a < b for a, b in zip(lo, hi)):
            raise ValueError("box needs lower_i < upper_i in every coordinate")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dimension(self):
        return len(self.lower)

    @classmethod
    def cube(cls, n, half_width):
        return cls((-half_width,) * n, (half_width,) * n)

    def contains(self, x, slack=0.0):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= np.array(self.lower) - slack) and np.all(x <= np.array(self.upper) + slack))


@dataclass(frozen=True)
class SamplingPlan:
    grid_points_per_axis: int = 11
    random_points: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.grid_points_per_axis < 0 or self.random_points < 0:
            raise ValueError("sample counts must be non-negative")
        if self.grid_points_per_axis == 1:
            raise ValueError("grid_points_per_axis must be >= 2 when a grid is used")
        if self.grid_points_per_axis == 0 and self.random_points == 0:
            raise ValueError("sampling plan has no points")


@dataclass(frozen=True)
class CertificationReport:
    norm: NormSpec
    sup_measure: float
    rate_estimate: float
    witness: np.ndarray
    sample_count: int
    certified: bool
    caveat: str = CAVEAT
    samples: np.ndarray = None
    measures: np.ndarray = None


def pointwise_rate(sys: DynamicalSystem, x, norm: NormSpec) -> float:
    """mu(J(x)) under ``norm``."""
    return matrix_measure(eval_jacobian(sys, x), norm).value


def sample_points(box: BoxDomain, plan: SamplingPlan) -> np.ndarray:
    """Full tensor grid (C order, first axis slowest) followed by seeded uniform draws."""
    lo = np.array(box.lower)
    hi = np.array(box.upper)
    blocks = []
    if plan.grid_points_per_axis:
        axes = [np.linspace(a, b, plan.grid_points_per_axis) for a, b in zip(lo, hi)]
        blocks.append(np.array(list(itertools.product(*axes)), dtype=float).reshape(-1, box.dimension))
    if plan.random_points:
        rng = np.random.default_rng(plan.seed)
        blocks.append(rng.uniform(lo, hi, size=(plan.random_points, box.dimension)))
    return np.vstack(blocks)


def certify_domain(
    sys: DynamicalSystem, box: BoxDomain, norm: NormSpec, plan: SamplingPlan
) -> CertificationReport:
    if box.dimension != sys.dimension:
        raise DimensionError(f"box is {box.dimension}-d, system is {sys.dimension}-d")
    pts = sample_points(box, plan)
    mus = np.empty(len(pts))
    for k, x in enumerate(pts):
        try:
            mus[k] = pointwise_rate(sys, x, norm)
        except NumericalError as exc:
            raise type(exc)(f"sample {k} at x={x.tolist()}: {exc}") from exc
    # np.argmax returns the first maximiser: lowest sample index wins ties
    k = int(np.argmax(mus))
    sup = float(mus[k]) + 0.0  # drop signed zero
    rate = 0.0 - sup
    return CertificationReport(
        norm=norm,
        sup_measure=sup,
        rate_estimate=rate,
        witness=pts[k].copy(),
        sample_count=len(pts),
        certified=rate > 0,
        samples=pts,
        measures=mus,
    )


def _lmi_matrix(A, P, c):
    A = _as_square(A)
    P = _as_square(P, "P")
    if A.shape != P.shape:
        raise DimensionError(f"A is {A.shape} but P is {P.shape}")
    _spd_eig(P)
    PA = P @ A
    return PA + PA.T + 2.0 * c * P


def krasovskii_check(A, P, c: float) -> bool:
    """True iff PA + A^T P + 2cP is negative definite with a roundoff margin."""
    M = _lmi_matrix(A, P, c)
    l2 = NormSpec.l2()
    margin = 1e-10 * (1.0 + induced_norm(P, l2) * (induced_norm(A, l2) + 2.0 * abs(c)))
    return symmetric_max_eigenvalue(M) < -margin


@dataclass(frozen=True)
class AuditRecord:
    measure_side: float
    lmi_side: float
    agree: bool
    boundary: bool

    @property
    def status(self):
        if self.boundary:
            return "boundary"
        return "pass" if self.agree else "fail"


def equivalence_audit(A, P, c: float) -> AuditRecord:
    """Compare sign(mu_P(A) + c) against sign(lambda_max(PA + A^T P + 2cP))."""
    lmi = symmetric_max_eigenvalue(_lmi_matrix(A, P, c))
    meas = matrix_measure(A, NormSpec.weighted(P)).value + c
    boundary = abs(meas) <= 1e-8 * (1.0 + abs(c))
    return AuditRecord(meas, lmi, (meas < 0) == (lmi < 0), boundary)


def random_audit_triples(count, seed=0, max_dim=5, lam_range=(0.1, 10.0), c_range=(-2.0, 2.0)):
    """Seeded (A, P, c) draws with P = Q diag(lam) Q^T, Q orthogonal."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_dim + 1))
        A = rng.standard_normal((n, n))
        Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        lam = rng.uniform(*lam_range, size=n)
        P = (Q * lam) @ Q.T
        P = 0.5 * (P + P.T)
        c = float(rng.uniform(*c_range))
        yield A, P, c
