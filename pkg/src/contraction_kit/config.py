"""JSON experiment configuration.

Example::

    {
      "system": {"name": "scalar_cubic_contractive", "params": {"a": 1, "b": 1}},
      "norm": {"kind": "L2"},
      "box": {"lower": [-2], "upper": [2]},
      "sampling": {"grid_points_per_axis": 101, "random_points": 0, "seed": 0},
      "simulation": {"x0": [1.0], "t_final": 10, "dt": 0.001},
      "verification": {"c": null, "tol": 1e-6, "dini_tol": 1e-2},
      "rho": {"kind": "power", "p": 2},
      "output_dir": "out"
    }

``norm`` may also be a list of descriptors; ``measure`` evaluates all of them,
the other commands use the first.  Every block is optional until a command
needs it.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .certify import BoxDomain, SamplingPlan
from .dynsys import SystemConfig
from .measure import NormSpec
from .simulate import ClassKSpec

__all__ = ["ExperimentConfig", "load_config", "resolve_seed", "SEED_ENV"]

SEED_ENV = "CONTRACTION_KIT_SEED"


def _vec(v):
    return None if v is None else [float(a) for a in np.atleast_1d(v)]


@dataclass
class ExperimentConfig:
    system: Optional[SystemConfig] = None
    norms: list = field(default_factory=lambda: [NormSpec.l2()])
    points: Optional[list] = None
    box: Optional[BoxDomain] = None
    grid_points_per_axis: int = 11
    random_points: int = 0
    seed: Optional[int] = None
    x0: Optional[list] = None
    xi0: Optional[list] = None
    t_final: Optional[float] = None
    dt: Optional[float] = None
    c: Optional[float] = None
    tol: float = 1e-6
    dini_tol: float = 1e-2
    rho: ClassKSpec = field(default_factory=ClassKSpec)
    audit: dict = field(default_factory=dict)
    output_dir: str = "out"

    @property
    def norm(self) -> NormSpec:
        return self.norms[0]

    def plan(self, seed: int) -> SamplingPlan:
        return SamplingPlan(self.grid_points_per_axis, self.random_points, seed)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        if not isinstance(d, dict):
            raise ValueError("config must be a JSON object")
        cfg = cls()
        if "system" in d:
            cfg.system = SystemConfig.from_dict(d["system"])
        if "norm" in d:
            raw = d["norm"]
            raw = raw if isinstance(raw, list) else [raw]
            if not raw:
                raise ValueError("norm list is empty")
            cfg.norms = [NormSpec.from_dict(r) for r in raw]
        if d.get("points") is not None:
            cfg.points = [_vec(p) for p in d["points"]]
        if "box" in d:
            cfg.box = BoxDomain(tuple(_vec(d["box"]["lower"])), tuple(_vec(d["box"]["upper"])))
        s = d.get("sampling", {})
        cfg.grid_points_per_axis = int(s.get("grid_points_per_axis", cfg.grid_points_per_axis))
        cfg.random_points = int(s.get("random_points", cfg.random_points))
        cfg.seed = None if s.get("seed") is None else int(s["seed"])
        sim = d.get("simulation", {})
        cfg.x0 = _vec(sim.get("x0"))
        cfg.xi0 = _vec(sim.get("xi0"))
        cfg.t_final = None if sim.get("t_final") is None else float(sim["t_final"])
        cfg.dt = None if sim.get("dt") is None else float(sim["dt"])
        ver = d.get("verification", {})
        cfg.c = None if ver.get("c") is None else float(ver["c"])
        cfg.tol = float(ver.get("tol", cfg.tol))
        cfg.dini_tol = float(ver.get("dini_tol", cfg.dini_tol))
        cfg.rho = ClassKSpec.from_dict(d.get("rho"))
        cfg.audit = dict(d.get("audit", {}))
        cfg.output_dir = str(d.get("output_dir", cfg.output_dir))
        return cfg

    def to_dict(self) -> dict:
        d = {}
        if self.system is not None:
            d["system"] = self.system.to_dict()
        d["norm"] = [n.to_dict() for n in self.norms]
        if self.points is not None:
            d["points"] = self.points
        if self.box is not None:
            d["box"] = {"lower": list(self.box.lower), "upper": list(self.box.upper)}
        d["sampling"] = {
            "grid_points_per_axis": self.grid_points_per_axis,
            "random_points": self.random_points,
            "seed": self.seed,
        }
        d["simulation"] = {"x0": self.x0, "xi0": self.xi0, "t_final": self.t_final, "dt": self.dt}
        d["verification"] = {"c": self.c, "tol": self.tol, "dini_tol": self.dini_tol}
        d["rho"] = self.rho.to_dict()
        if self.audit:
            d["audit"] = self.audit
        d["output_dir"] = self.output_dir
        return d


def load_config(path) -> ExperimentConfig:
    with Path(path).open("r", encoding="utf-8") as fh:
        return ExperimentConfig.from_dict(json.load(fh))


def resolve_seed(flag, config_seed, environ) -> int:
    """flag > config > environment > 0."""
    if flag is not None:
        return int(flag)
    if config_seed is not None:
        return int(config_seed)
    env = environ.get(SEED_ENV)
    if env not in (None, ""):
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV}={env!r} is not an integer") from None
    return 0
