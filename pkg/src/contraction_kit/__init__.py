"""Contraction certificates via matrix measures, and velocity-decay checks along trajectories."""

from .certify import (
    AuditRecord,
    BoxDomain,
    CertificationReport,
    SamplingPlan,
    certify_domain,
    equivalence_audit,
    krasovskii_check,
    pointwise_rate,
)
from .dynsys import (
    DynamicalSystem,
    SystemConfig,
    eval_jacobian,
    eval_velocity,
    jacobian_consistency_check,
    make_system,
)
from .measure import (
    MeasureValue,
    NormSpec,
    induced_norm,
    matrix_measure,
    matrix_measure_limit_oracle,
    spd_sqrt,
    symmetric_max_eigenvalue,
    vector_norm,
    weighted_transform,
)
from .simulate import (
    ClassKSpec,
    Trajectory,
    VerificationVerdict,
    dini_slope_check,
    find_equilibrium,
    integrate,
    lyapunov_series,
    verify_pair_contraction,
    verify_theorem1,
)

__version__ = "0.1.0"
