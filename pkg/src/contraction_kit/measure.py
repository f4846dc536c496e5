"""Vector norms, induced matrix norms and matrix measures (logarithmic norms).

Four norms are supported: L1, L2, LInf and the weighted Euclidean norm
``|x| = sqrt(x^T P x)`` for a symmetric positive definite ``P``.

The closed-form measures used by :func:`matrix_measure` are

- L1:   max_j ( a_jj + sum_{i != j} |a_ij| )
- LInf: max_i ( a_ii + sum_{j != i} |a_ij| )
- L2:   largest eigenvalue of (A + A^T) / 2
- WeightedL2: largest eigenvalue of (B + B^T) / 2, B = P^{1/2} A P^{-1/2}

:func:`matrix_measure_limit_oracle` evaluates the one-sided difference
quotient ``(||I + hA|| - 1) / h`` directly and is used to check them.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionError, NonFiniteError, NotSPDError, OracleUnderflowError

__all__ = [
    "NormSpec",
    "MeasureValue",
    "OracleEstimate",
    "vector_norm",
    "induced_norm",
    "spd_sqrt",
    "spd_inv_sqrt",
    "weighted_transform",
    "symmetric_max_eigenvalue",
    "matrix_measure",
    "matrix_measure_limit_oracle",
    "NORM_KINDS",
]

NORM_KINDS = ("L1", "L2", "LInf", "WeightedL2")

SYMMETRY_RTOL = 1e-12
SPD_RATIO = 1e-10
_EPS = np.finfo(float).eps


def _as_matrix(A, name="A"):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise DimensionError(f"{name} must be a 2-d array, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise NonFiniteError(f"{name} has non-finite entries")
    return A


def _as_square(A, name="A"):
    A = _as_matrix(A, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    return A


def _check_symmetric(M, name):
    scale = max(1.0, float(np.max(np.abs(M))))
    if np.max(np.abs(M - M.T)) > SYMMETRY_RTOL * scale:
        raise NotSPDError(f"{name} is not symmetric")


def _spd_eig(P):
    P = _as_square(P, "P")
    _check_symmetric(P, "P")
    w, V = np.linalg.eigh(0.5 * (P + P.T))
    if not w[-1] > 0 or w[0] <= SPD_RATIO * w[-1]:
        raise NotSPDError(
            f"P is not positive definite enough: eigenvalues in [{w[0]:.3e}, {w[-1]:.3e}]"
        )
    return w, V


@dataclass(frozen=True, eq=False)
class NormSpec:
    """Which vector norm is in force.

    ``weight`` is required for (and only for) ``WeightedL2``; it is validated
    as SPD at construction.
    """

    kind: str
    weight: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in NORM_KINDS:
            raise ValueError(f"unknown norm kind {self.kind!r}; expected one of {NORM_KINDS}")
        if self.kind == "WeightedL2":
            if self.weight is None:
                raise ValueError("WeightedL2 requires a weight matrix")
            P = _as_square(self.weight, "weight")
            _spd_eig(P)
            P = P.copy()
            P.setflags(write=False)
            object.__setattr__(self, "weight", P)
        elif self.weight is not None:
            raise ValueError(f"norm kind {self.kind} takes no weight")

    @classmethod
    def l1(cls):
        return cls("L1")

    @classmethod
    def l2(cls):
        return cls("L2")

    @classmethod
    def linf(cls):
        return cls("LInf")

    @classmethod
    def weighted(cls, P):
        return cls("WeightedL2", np.asarray(P, dtype=float))

    def __eq__(self, other):
        if not isinstance(other, NormSpec) or other.kind != self.kind:
            return False
        if self.weight is None:
            return other.weight is None
        return other.weight is not None and np.array_equal(self.weight, other.weight)

    def __hash__(self):
        w = None if self.weight is None else self.weight.tobytes()
        return hash((self.kind, w))

    def to_dict(self):
        d = {"kind": self.kind}
        if self.weight is not None:
            d["weight"] = self.weight.tolist()
        return d

    @classmethod
    def from_dict(cls, d):
        if isinstance(d, str):
            return cls(d)
        w = d.get("weight")
        return cls(d["kind"], None if w is None else np.asarray(w, dtype=float))


@dataclass(frozen=True)
class MeasureValue:
    value: float
    norm: NormSpec

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class OracleEstimate:
    """Difference quotients of ``(||I + hA|| - 1) / h`` over a schedule.

    ``value`` is the quotient at the smallest ``h``; ``extrapolated`` is the
    first-order Richardson combination of the last two quotients.
    """

    value: float
    extrapolated: float
    h: tuple
    quotients: tuple

    def __float__(self):
        return float(self.value)


def vector_norm(x, norm: NormSpec) -> float:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size == 0:
        raise DimensionError("empty vector")
    if not np.isfinite(x).all():
        raise NonFiniteError("vector has non-finite entries")
    if norm.kind == "L1":
        return float(np.sum(np.abs(x)))
    if norm.kind == "LInf":
        return float(np.max(np.abs(x)))
    if norm.kind == "WeightedL2" and norm.weight.shape[0] != x.size:
        raise DimensionError(f"weight is {norm.weight.shape[0]}x{norm.weight.shape[0]} but vector has {x.size} entries")
    # scale first so tiny/huge vectors do not under/overflow when squared
    s = float(np.max(np.abs(x)))
    if s == 0.0:
        return 0.0
    y = x / s
    q = float(y @ y) if norm.kind == "L2" else float(y @ norm.weight @ y)
    return s * float(np.sqrt(max(q, 0.0)))


def _l2_induced(M):
    # largest singular value from the eigenvalues of M^T M
    lam = np.linalg.eigvalsh(M.T @ M)
    return float(np.sqrt(max(lam[-1], 0.0)))


def induced_norm(A, norm: NormSpec) -> float:
    """Operator norm of ``A`` induced by ``norm``."""
    A = _as_square(A)
    if norm.kind == "L1":
        return float(np.max(np.sum(np.abs(A), axis=0)))
    if norm.kind == "LInf":
        return float(np.max(np.sum(np.abs(A), axis=1)))
    if norm.kind == "L2":
        return _l2_induced(A)
    return _l2_induced(weighted_transform(A, norm.weight))


def spd_sqrt(P) -> np.ndarray:
    """Symmetric square root of an SPD matrix via its eigendecomposition."""
    w, V = _spd_eig(P)
    S = (V * np.sqrt(w)) @ V.T
    return 0.5 * (S + S.T)


def spd_inv_sqrt(P) -> np.ndarray:
    w, V = _spd_eig(P)
    S = (V / np.sqrt(w)) @ V.T
    return 0.5 * (S + S.T)


def weighted_transform(A, P) -> np.ndarray:
    """Return ``B = P^{1/2} A P^{-1/2}``."""
    A = _as_square(A)
    P = _as_square(P, "P")
    if A.shape != P.shape:
        raise DimensionError(f"A is {A.shape} but P is {P.shape}")
    w, V = _spd_eig(P)
    r = np.sqrt(w)
    S = (V * r) @ V.T
    S_inv = (V / r) @ V.T
    return S @ A @ S_inv


def symmetric_max_eigenvalue(M) -> float:
    M = _as_square(M, "M")
    _check_symmetric(M, "M")
    return float(np.linalg.eigvalsh(0.5 * (M + M.T))[-1])


def _check_norm_dim(A, norm):
    if norm.kind == "WeightedL2" and norm.weight.shape != A.shape:
        raise DimensionError(f"A is {A.shape} but weight is {norm.weight.shape}")


def matrix_measure(A, norm: NormSpec) -> MeasureValue:
    A = _as_square(A)
    _check_norm_dim(A, norm)
    if norm.kind in ("L1", "LInf"):
        d = np.diag(A)
        off = np.abs(A) - np.diag(np.abs(d))
        sums = off.sum(axis=0) if norm.kind == "L1" else off.sum(axis=1)
        value = float(np.max(d + sums))
    elif norm.kind == "L2":
        value = symmetric_max_eigenvalue(0.5 * (A + A.T))
    else:
        B = weighted_transform(A, norm.weight)
        value = symmetric_max_eigenvalue(0.5 * (B + B.T))
    return MeasureValue(value, norm)


DEFAULT_H_SCHEDULE = (1e-3, 1e-4, 2e-5, 1e-5)


def matrix_measure_limit_oracle(
    A, norm: NormSpec, h_schedule: Sequence[float] = DEFAULT_H_SCHEDULE
) -> OracleEstimate:
    """Evaluate ``(||I + hA|| - 1) / h`` straight from the induced norm.

    Deliberately avoids the closed forms: L1/LInf use column/row abs-sums of
    ``I + hA``, L2 the largest singular value, WeightedL2 the L2 norm of
    ``P^{1/2} (I + hA) P^{-1/2}``.

    Raises :class:`OracleUnderflowError` when ``hA`` is below the rounding
    resolution of ``I + hA``.
    """
    A = _as_square(A)
    _check_norm_dim(A, norm)
    hs = [float(h) for h in h_schedule]
    if not hs:
        raise ValueError("empty h schedule")
    if any(h <= 0 for h in hs) or any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("h schedule must be positive and strictly decreasing")

    n = A.shape[0]
    I = np.eye(n)
    amax = float(np.max(np.abs(A)))
    if norm.kind == "WeightedL2":
        S = spd_sqrt(norm.weight)
        S_inv = spd_inv_sqrt(norm.weight)

    quotients = []
    for h in hs:
        if amax > 0 and h * amax < 64 * _EPS:
            raise OracleUnderflowError(f"h={h:g} underflows against max|a_ij|={amax:g}")
        M = I + h * A
        if norm.kind == "L1":
            nrm = float(np.max(np.sum(np.abs(M), axis=0)))
        elif norm.kind == "LInf":
            nrm = float(np.max(np.sum(np.abs(M), axis=1)))
        elif norm.kind == "L2":
            nrm = _l2_induced(M)
        else:
            nrm = _l2_induced(S @ M @ S_inv)
        quotients.append((nrm - 1.0) / h)

    if len(hs) >= 2:
        h1, h2 = hs[-2], hs[-1]
        q1, q2 = quotients[-2], quotients[-1]
        extrapolated = (h1 * q2 - h2 * q1) / (h1 - h2)
    else:
        extrapolated = quotients[-1]
    return OracleEstimate(quotients[-1], float(extrapolated), tuple(hs), tuple(quotients))
