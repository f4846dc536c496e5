"""Autonomous systems xdot = f(x), their Jacobians, and a small catalog.

Catalog entries (all globally defined and smooth on R^n):

``linear``
    f(x) = A x + b.  Params: ``A`` (n x n), ``b`` (n, default 0).
``scalar_cubic_contractive``
    f(x) = -a x - b x^3 with a, b > 0; J = -a - 3 b x^2 <= -a.
``scalar_cubic_marginal``
    f(x) = -x^3; J(0) = 0 so no uniform rate exists.
``rotation``
    f(x) = [[0, w], [-w, 0]] x; skew Jacobian, L2 measure exactly 0.
``diag_dominant_nl``
    f_i(x) = -a_i x_i + eps * tanh(x_{(i+1) mod n}) with a_i > eps > 0.
    Params: ``n``, ``a`` (scalar or length-n), ``eps``.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DimensionError, NonFiniteError

__all__ = [
    "DynamicalSystem",
    "SystemConfig",
    "CATALOG",
    "make_system",
    "eval_velocity",
    "eval_jacobian",
    "finite_difference_jacobian",
    "jacobian_consistency_check",
]

_SQRT_EPS = float(np.sqrt(np.finfo(float).eps))


@dataclass(frozen=True)
class DynamicalSystem:
    """Immutable ``xdot = f(x)`` with an analytic or finite-difference Jacobian.

    ``jacobian`` is ``None`` for the finite-difference source.
    """

    dimension: int
    velocity: Callable[[np.ndarray], np.ndarray]
    jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = "custom"
    params: dict = field(default_factory=dict)

    @property
    def jacobian_source(self) -> str:
        return "analytic" if self.jacobian is not None else "finite_difference"

    def with_finite_difference(self) -> "DynamicalSystem":
        return DynamicalSystem(self.dimension, self.velocity, None, self.name, self.params)


@dataclass
class SystemConfig:
    name: str
    params: dict = field(default_factory=dict)
    dimension: Optional[int] = None
    jacobian: str = "analytic"

    def to_dict(self):
        d = {"name": self.name, "params": _jsonable(self.params)}
        if self.dimension is not None:
            d["dimension"] = self.dimension
        if self.jacobian != "analytic":
            d["jacobian"] = self.jacobian
        return d

    @classmethod
    def from_dict(cls, d):
        if "name" not in d:
            raise ValueError("system block needs a 'name'")
        return cls(
            name=d["name"],
            params=dict(d.get("params", {})),
            dimension=d.get("dimension"),
            jacobian=d.get("jacobian", "analytic"),
        )


def _jsonable(params):
    out = {}
    for k, v in params.items():
        out[k] = v.tolist() if isinstance(v, np.ndarray) else v
    return out


def _positive(params, key):
    if key not in params:
        raise ValueError(f"missing parameter {key!r}")
    v = float(params[key])
    if not np.isfinite(v) or v <= 0:
        raise ValueError(f"parameter {key!r} must be > 0, got {v}")
    return v


def _linear(params, dimension):
    if "A" not in params:
        raise ValueError("linear system needs parameter 'A'")
    A = np.atleast_2d(np.asarray(params["A"], dtype=float))
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"A must be square, got {A.shape}")
    n = A.shape[0]
    b = np.asarray(params.get("b", np.zeros(n)), dtype=float).reshape(-1)
    if b.size != n:
        raise DimensionError(f"b has {b.size} entries, A is {n}x{n}")
    if not (np.isfinite(A).all() and np.isfinite(b).all()):
        raise ValueError("A and b must be finite")
    A.setflags(write=False)
    b.setflags(write=False)
    return DynamicalSystem(
        n,
        lambda x: A @ x + b,
        lambda x: A.copy(),
        "linear",
        {"A": A.tolist(), "b": b.tolist()},
    )


def _scalar_cubic_contractive(params, dimension):
    a = _positive(params, "a")
    b = _positive(params, "b")
    return DynamicalSystem(
        1,
        lambda x: -a * x - b * x**3,
        lambda x: np.array([[-a - 3.0 * b * x[0] ** 2]]),
        "scalar_cubic_contractive",
        {"a": a, "b": b},
    )


def _scalar_cubic_marginal(params, dimension):
    return DynamicalSystem(
        1,
        lambda x: -(x**3),
        lambda x: np.array([[-3.0 * x[0] ** 2]]),
        "scalar_cubic_marginal",
        {},
    )


def _rotation(params, dimension):
    w = float(params.get("omega", 1.0))
    if not np.isfinite(w):
        raise ValueError("omega must be finite")
    R = np.array([[0.0, w], [-w, 0.0]])
    R.setflags(write=False)
    return DynamicalSystem(2, lambda x: R @ x, lambda x: R.copy(), "rotation", {"omega": w})


def _diag_dominant_nl(params, dimension):
    n = int(params.get("n", dimension or 0))
    if n < 1:
        raise ValueError("diag_dominant_nl needs a positive dimension 'n'")
    eps = _positive(params, "eps")
    if "a" not in params:
        raise ValueError("missing parameter 'a'")
    a = np.broadcast_to(np.asarray(params["a"], dtype=float), (n,)).copy()
    if not np.all(a > eps):
        raise ValueError(f"need a_i > eps > 0; got a={a.tolist()}, eps={eps}")
    a.setflags(write=False)
    shift = np.roll(np.arange(n), -1)

    def velocity(x):
        return -a * x + eps * np.tanh(x[shift])

    def jacobian(x):
        J = np.diag(-a)
        sech2 = 1.0 / np.cosh(x[shift]) ** 2
        J[np.arange(n), shift] += eps * sech2
        return J

    return DynamicalSystem(n, velocity, jacobian, "diag_dominant_nl", {"n": n, "a": a.tolist(), "eps": eps})


CATALOG = {
    "linear": _linear,
    "scalar_cubic_contractive": _scalar_cubic_contractive,
    "scalar_cubic_marginal": _scalar_cubic_marginal,
    "rotation": _rotation,
    "diag_dominant_nl": _diag_dominant_nl,
}


def make_system(config) -> DynamicalSystem:
    """Instantiate a catalog entry from a :class:`SystemConfig` (or its dict form)."""
    if isinstance(config, dict):
        config = SystemConfig.from_dict(config)
    try:
        builder = CATALOG[config.name]
    except KeyError:
        raise ValueError(f"unknown system {config.name!r}; known: {sorted(CATALOG)}") from None
    sys = builder(config.params, config.dimension)
    if config.dimension is not None and config.dimension != sys.dimension:
        raise DimensionError(f"config dimension {config.dimension} != system dimension {sys.dimension}")
    if config.jacobian == "finite_difference":
        sys = sys.with_finite_difference()
    elif config.jacobian != "analytic":
        raise ValueError(f"jacobian must be 'analytic' or 'finite_difference', got {config.jacobian!r}")
    return sys


def _state(sys, x):
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != sys.dimension:
        raise DimensionError(f"state has {x.size} entries, system dimension is {sys.dimension}")
    if not np.isfinite(x).all():
        raise NonFiniteError("state has non-finite entries")
    return x


def eval_velocity(sys: DynamicalSystem, x) -> np.ndarray:
    x = _state(sys, x)
    fx = np.asarray(sys.velocity(x), dtype=float).reshape(-1)
    if fx.size != sys.dimension:
        raise DimensionError(f"velocity returned {fx.size} entries, expected {sys.dimension}")
    if not np.isfinite(fx).all():
        raise NonFiniteError(f"non-finite velocity at x={x.tolist()}")
    return fx


def finite_difference_jacobian(f, x) -> np.ndarray:
    """Central differences with h_i = sqrt(eps) * max(1, |x_i|)."""
    x = np.asarray(x, dtype=float)
    n = x.size
    cols = []
    for i in range(n):
        h = _SQRT_EPS * max(1.0, abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        # divide by the representable step, not the nominal one
        cols.append((np.asarray(f(xp), dtype=float) - np.asarray(f(xm), dtype=float)) / (xp[i] - xm[i]))
    return np.column_stack(cols) if cols else np.zeros((0, 0))


def eval_jacobian(sys: DynamicalSystem, x) -> np.ndarray:
    x = _state(sys, x)
    if sys.jacobian is not None:
        J = np.atleast_2d(np.asarray(sys.jacobian(x), dtype=float))
    else:
        J = finite_difference_jacobian(lambda y: eval_velocity(sys, y), x)
    if J.shape != (sys.dimension, sys.dimension):
        raise DimensionError(f"Jacobian has shape {J.shape}, expected {(sys.dimension,) * 2}")
    if not np.isfinite(J).all():
        raise NonFiniteError(f"non-finite Jacobian at x={x.tolist()}")
    return J


def jacobian_consistency_check(sys: DynamicalSystem, x, direction, h: float) -> float:
    """Relative residual between a central difference of f along ``direction`` and J(x) d.

    ``direction`` must have unit Euclidean length.
    """
    x = _state(sys, x)
    d = np.asarray(direction, dtype=float).reshape(-1)
    if d.size != x.size:
        raise DimensionError("direction dimension mismatch")
    if abs(np.linalg.norm(d) - 1.0) > 1e-12:
        raise ValueError("direction must be a unit vector")
    if h <= 0:
        raise ValueError("h must be positive")
    fd = (eval_velocity(sys, x + h * d) - eval_velocity(sys, x - h * d)) / (2.0 * h)
    Jd = eval_jacobian(sys, x) @ d
    return float(np.linalg.norm(fd - Jd) / (1.0 + np.linalg.norm(Jd)))
