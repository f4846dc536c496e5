import numpy as np
import pytest

from contraction_kit import NormSpec, SystemConfig, make_system
from contraction_kit.certify import (
    BoxDomain,
    SamplingPlan,
    certify_domain,
    equivalence_audit,
    krasovskii_check,
    pointwise_rate,
    random_audit_triples,
    sample_points,
)
from contraction_kit.errors import DimensionError, NotSPDError

L1, L2 = NormSpec.l1(), NormSpec.l2()


def system(name, **params):
    return make_system(SystemConfig(name, params))


def test_pointwise_rate_examples():
    assert pointwise_rate(system("scalar_cubic_contractive", a=1, b=1), [0.5], L2) == -1.75
    lin = system("linear", A=[[-3.0, 1.0], [2.0, -5.0]])
    assert pointwise_rate(lin, [7.0, -2.0], L1) == -1.0
    assert pointwise_rate(system("rotation", omega=1.0), [0.4, 1.0], L2) == 0.0


def test_box_and_plan_validation():
    with pytest.raises(ValueError):
        BoxDomain((0.0,), (0.0,))
    with pytest.raises(DimensionError):
        BoxDomain((0.0, 0.0), (1.0,))
    with pytest.raises(ValueError):
        SamplingPlan(grid_points_per_axis=1)
    with pytest.raises(ValueError):
        SamplingPlan(grid_points_per_axis=0, random_points=0)


def test_sample_points_layout():
    box = BoxDomain((-1.0, 0.0), (1.0, 2.0))
    pts = sample_points(box, SamplingPlan(3, 5, seed=4))
    assert pts.shape == (14, 2)
    np.testing.assert_array_equal(pts[:3], [[-1, 0], [-1, 1], [-1, 2]])
    assert all(box.contains(p) for p in pts)
    np.testing.assert_array_equal(pts, sample_points(box, SamplingPlan(3, 5, seed=4)))
    assert not np.array_equal(pts[9:], sample_points(box, SamplingPlan(3, 5, seed=5))[9:])


def test_certify_cubic_contractive():
    rep = certify_domain(system("scalar_cubic_contractive", a=1, b=1), BoxDomain((-1.0,), (1.0,)), L2, SamplingPlan(101))
    assert rep.sup_measure == -1.0
    assert rep.witness[0] == pytest.approx(0.0, abs=1e-15)
    assert rep.rate_estimate == 1.0 and rep.certified
    assert rep.sample_count == 101
    assert rep.caveat == "empirical-on-box"


def test_certify_marginal_not_certified():
    rep = certify_domain(system("scalar_cubic_marginal"), BoxDomain((-1.0,), (1.0,)), L2, SamplingPlan(101))
    assert rep.sup_measure == 0.0 and rep.rate_estimate == 0.0
    assert not rep.certified


def test_certify_constant_jacobian():
    rep = certify_domain(system("linear", A=-np.eye(3)), BoxDomain.cube(3, 5.0), L2, SamplingPlan(4, 10, seed=1))
    assert rep.sup_measure == -1.0 and rep.rate_estimate == 1.0
    assert np.all(rep.measures == -1.0)
    # tie everywhere: lowest index wins
    np.testing.assert_array_equal(rep.witness, rep.samples[0])


def test_certify_witness_in_box_and_certified_iff_positive():
    sys = system("diag_dominant_nl", n=2, a=1.0, eps=0.5)
    box = BoxDomain((-2.0, -1.0), (1.0, 3.0))
    rep = certify_domain(sys, box, NormSpec.linf(), SamplingPlan(9, 30, seed=2))
    assert box.contains(rep.witness)
    assert rep.certified == (rep.rate_estimate > 0)
    assert rep.sup_measure == rep.measures.max()


def test_certify_monotone_in_box():
    sys = system("scalar_cubic_contractive", a=1, b=1)
    rates = []
    for w in (0.25, 0.5, 1.0, 2.0):
        # grid spacing fixed at 0.05 so nested boxes share sample points
        rep = certify_domain(sys, BoxDomain((0.5,), (0.5 + w,)), L2, SamplingPlan(int(round(w / 0.05)) + 1))
        rates.append(rep.rate_estimate)
    assert all(r2 <= r1 for r1, r2 in zip(rates, rates[1:]))


def test_certify_deterministic():
    sys = system("diag_dominant_nl", n=3, a=1.0, eps=0.25)
    box = BoxDomain.cube(3, 2.0)
    plan = SamplingPlan(5, 50, seed=11)
    r1 = certify_domain(sys, box, L2, plan)
    r2 = certify_domain(sys, box, L2, plan)
    assert r1.sup_measure == r2.sup_measure
    np.testing.assert_array_equal(r1.witness, r2.witness)
    np.testing.assert_array_equal(r1.measures, r2.measures)


def test_certify_dimension_mismatch():
    with pytest.raises(DimensionError):
        certify_domain(system("rotation"), BoxDomain.cube(3, 1.0), L2, SamplingPlan(3))


# --- Krasovskii LMI ----------------------------------------------------------

def test_krasovskii_examples():
    assert krasovskii_check(-np.eye(2), np.eye(2), 0.5)
    assert not krasovskii_check([[-1.0, 2.0], [0.0, -1.0]], np.diag([4.0, 1.0]), 0.0)
    for c in (1e-6, 0.1, 3.0):
        assert not krasovskii_check([[0.0, 1.0], [-1.0, 0.0]], np.eye(2), c)


def test_krasovskii_indefinite_example_by_hand():
    # PA + A^T P = [[-8, 8], [8, -2]]: trace -10, det -48 -> one positive eigenvalue
    A = np.array([[-1.0, 2.0], [0.0, -1.0]])
    P = np.diag([4.0, 1.0])
    M = P @ A + A.T @ P
    np.testing.assert_array_equal(M, [[-8, 8], [8, -2]])
    assert np.linalg.det(M) == pytest.approx(-48.0)


def test_krasovskii_margin_at_boundary():
    # PA + A^T P + 2cP = 0 exactly when A = -cI, P = I
    assert not krasovskii_check(-0.5 * np.eye(2), np.eye(2), 0.5)


def test_krasovskii_errors():
    with pytest.raises(NotSPDError):
        krasovskii_check(np.eye(2), np.diag([1.0, -1.0]), 0.1)
    with pytest.raises(DimensionError):
        krasovskii_check(np.eye(2), np.eye(3), 0.1)


def test_krasovskii_scale_invariance():
    for A, P, c in random_audit_triples(200, seed=8):
        for alpha in (1e-3, 0.7, 50.0):
            assert krasovskii_check(A, alpha * P, c) == krasovskii_check(A, P, c)


def test_equivalence_audit_examples():
    rec = equivalence_audit(-np.eye(2), np.eye(2), 0.5)
    assert rec.measure_side == pytest.approx(-0.5) and rec.lmi_side == pytest.approx(-1.0)
    assert rec.agree and rec.status == "pass"
    rec = equivalence_audit([[-1.0, 2.0], [0.0, -1.0]], np.diag([4.0, 1.0]), 0.0)
    # lambda_max([[-8,8],[8,-2]]) = -5 + sqrt(9 + 64) = -5 + sqrt(73)
    assert rec.measure_side == pytest.approx(1.0)
    assert rec.lmi_side == pytest.approx(-5.0 + np.sqrt(73.0))
    assert rec.agree


def test_equivalence_audit_boundary_dead_zone():
    rec = equivalence_audit(-0.5 * np.eye(2), np.eye(2), 0.5)
    assert rec.boundary and rec.status == "boundary"


def test_equivalence_audit_near_boundary_draws():
    rng = np.random.default_rng(3)
    for A, P, _ in random_audit_triples(300, seed=4):
        mu = equivalence_audit(A, P, 0.0).measure_side
        c = -mu + rng.choice([-1, 1]) * 10.0 ** rng.uniform(-7, -2)
        rec = equivalence_audit(A, P, c)
        assert rec.boundary or rec.agree
