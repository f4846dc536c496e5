import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from contraction_kit.errors import DimensionError, NonFiniteError, NotSPDError, OracleUnderflowError
from contraction_kit.measure import (
    NormSpec,
    induced_norm,
    matrix_measure,
    matrix_measure_limit_oracle,
    spd_inv_sqrt,
    spd_sqrt,
    symmetric_max_eigenvalue,
    vector_norm,
    weighted_transform,
)

L1, L2, LINF = NormSpec.l1(), NormSpec.l2(), NormSpec.linf()

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def square(n):
    return arrays(np.float64, (n, n), elements=finite)


def vectors(n):
    return arrays(np.float64, (n,), elements=finite)


# --- vector_norm ---------------------------------------------------------

def test_vector_norm_examples():
    assert vector_norm([3, 4], L2) == 5.0
    assert vector_norm([3, -4], L1) == 7.0
    assert vector_norm([3, -4], LINF) == 4.0
    assert vector_norm([1, 1], NormSpec.weighted(np.diag([4.0, 1.0]))) == pytest.approx(np.sqrt(5), abs=1e-15)


def test_vector_norm_errors():
    with pytest.raises(DimensionError):
        vector_norm([1, 2, 3], NormSpec.weighted(np.eye(2)))
    with pytest.raises(NonFiniteError):
        vector_norm([1, np.nan], L2)


@pytest.mark.parametrize("kind", ["L1", "L2", "LInf", "W"])
@given(x=vectors(3), y=vectors(3))
def test_reverse_triangle_inequality(kind, x, y):
    norm = NormSpec.weighted(np.diag([2.0, 1.0, 0.5])) if kind == "W" else NormSpec(kind)
    lhs = abs(vector_norm(x, norm) - vector_norm(y, norm))
    assert lhs <= vector_norm(x - y, norm) + 1e-9


def test_zero_iff_zero():
    for norm in (L1, L2, LINF, NormSpec.weighted(np.diag([3.0, 2.0]))):
        assert vector_norm([0.0, 0.0], norm) == 0.0
        assert vector_norm([0.0, 1e-300], norm) > 0.0


# --- NormSpec --------------------------------------------------------------

def test_normspec_validation():
    with pytest.raises(ValueError):
        NormSpec("L3")
    with pytest.raises(ValueError):
        NormSpec("WeightedL2")
    with pytest.raises(ValueError):
        NormSpec("L2", np.eye(2))
    with pytest.raises(NotSPDError):
        NormSpec.weighted([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotSPDError):
        NormSpec.weighted(np.diag([1.0, 1e-12]))
    with pytest.raises(NotSPDError):
        NormSpec.weighted(np.diag([1.0, -1.0]))


def test_normspec_dict_round_trip():
    for n in (L1, L2, LINF, NormSpec.weighted([[2.0, 1.0], [1.0, 2.0]])):
        assert NormSpec.from_dict(n.to_dict()) == n


# --- spd_sqrt / weighted_transform ----------------------------------------

def test_spd_sqrt_examples():
    np.testing.assert_array_equal(spd_sqrt(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(spd_sqrt(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]), atol=1e-15)


def test_spd_sqrt_2x2_against_eigendecomposition():
    # P = [[2,1],[1,2]] has eigenpairs (3, (1,1)/sqrt2), (1, (1,-1)/sqrt2), so
    # P^{1/2} = [[s+1, s-1], [s-1, s+1]] / 2 with s = sqrt(3).
    s = np.sqrt(3.0)
    expected = 0.5 * np.array([[s + 1, s - 1], [s - 1, s + 1]])
    S = spd_sqrt([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(S, expected, rtol=1e-14)
    assert np.linalg.norm(S @ S - [[2, 1], [1, 2]]) <= 1e-10 * np.linalg.norm([[2, 1], [1, 2]])


def test_spd_sqrt_random(rng):
    from conftest import random_spd

    for n in (1, 2, 4, 8):
        P = random_spd(rng, n)
        S = spd_sqrt(P)
        assert np.array_equal(S, S.T)
        assert np.linalg.norm(S @ S - P) <= 1e-10 * np.linalg.norm(P)
        np.testing.assert_allclose(S @ spd_inv_sqrt(P), np.eye(n), atol=1e-12)


def test_spd_sqrt_rejects_bad_input():
    with pytest.raises(NotSPDError):
        spd_sqrt([[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(NotSPDError):
        spd_sqrt(np.diag([1.0, 0.0]))


def test_weighted_transform_examples(rng):
    A = rng.standard_normal((3, 3))
    np.testing.assert_allclose(weighted_transform(A, np.eye(3)), A, atol=1e-15)
    B = weighted_transform([[-1.0, 2.0], [0.0, -1.0]], np.diag([4.0, 1.0]))
    # diag(2,1) A diag(1/2,1)
    np.testing.assert_allclose(B, [[-1.0, 4.0], [0.0, -1.0]], atol=1e-15)
    with pytest.raises(DimensionError):
        weighted_transform(np.eye(2), np.eye(3))


def test_weighted_transform_is_similarity(rng):
    from conftest import random_spd

    for _ in range(20):
        A = rng.standard_normal((4, 4))
        B = weighted_transform(A, random_spd(rng, 4))
        ea = np.sort_complex(np.linalg.eigvals(A))
        eb = np.sort_complex(np.linalg.eigvals(B))
        np.testing.assert_allclose(eb, ea, atol=1e-9)


# --- symmetric_max_eigenvalue ---------------------------------------------

def test_symmetric_max_eigenvalue_examples():
    assert symmetric_max_eigenvalue(-np.eye(2)) == -1.0
    assert symmetric_max_eigenvalue([[-2.0, 0.5], [0.5, -2.0]]) == pytest.approx(-1.5, abs=1e-15)
    assert symmetric_max_eigenvalue(np.diag([3.0, 1.0, -7.0])) == 3.0


def test_symmetric_max_eigenvalue_errors():
    with pytest.raises(NonFiniteError):
        symmetric_max_eigenvalue([[np.inf, 0], [0, 1]])
    with pytest.raises(NotSPDError):
        symmetric_max_eigenvalue([[0.0, 1.0], [0.0, 0.0]])


# --- matrix_measure ---------------------------------------------------------

def test_matrix_measure_examples():
    assert matrix_measure(-np.eye(2), L2).value == -1.0
    A = [[-3.0, 1.0], [2.0, -5.0]]
    assert matrix_measure(A, L1).value == -1.0
    assert matrix_measure(A, LINF).value == -2.0
    # the weight flips the verdict: mu_L2 = 0, mu_P = +1
    A = [[-1.0, 2.0], [0.0, -1.0]]
    assert matrix_measure(A, L2).value == pytest.approx(0.0, abs=1e-15)
    assert matrix_measure(A, NormSpec.weighted(np.diag([4.0, 1.0]))).value == pytest.approx(1.0, abs=1e-14)


def test_matrix_measure_returns_norm():
    mv = matrix_measure(np.eye(2), LINF)
    assert mv.norm == LINF and float(mv) == 1.0


def test_matrix_measure_errors():
    with pytest.raises(DimensionError):
        matrix_measure(np.ones((2, 3)), L2)
    with pytest.raises(DimensionError):
        matrix_measure(np.eye(3), NormSpec.weighted(np.eye(2)))


def test_weighted_identity_matches_l2(rng):
    for n in (1, 2, 3, 5, 10):
        A = rng.standard_normal((n, n))
        w = matrix_measure(A, NormSpec.weighted(np.eye(n))).value
        assert abs(w - matrix_measure(A, L2).value) <= 1e-12


# --- limit oracle -------------------------------------------------------------

def test_oracle_minus_identity():
    est = matrix_measure_limit_oracle(-np.eye(2), L2, [1e-6])
    assert abs(est.value + 1.0) <= 1e-9


def test_oracle_column_example_converges():
    A = [[-3.0, 1.0], [2.0, -5.0]]
    est = matrix_measure_limit_oracle(A, L1, [1e-2, 1e-4, 1e-6])
    assert len(est.quotients) == 3
    assert est.value == pytest.approx(-1.0, abs=1e-8)
    assert est.extrapolated == pytest.approx(-1.0, abs=1e-8)


def test_oracle_l2_random_matrices():
    rng = np.random.default_rng(5)
    for _ in range(100):
        A = rng.standard_normal((5, 5))
        est = matrix_measure_limit_oracle(A, L2)
        assert abs(est.extrapolated - symmetric_max_eigenvalue(0.5 * (A + A.T))) <= 1e-6


def test_oracle_richardson_beats_raw_quotient():
    A = np.array([[0.0, 3.0], [-1.0, 0.5]])
    est = matrix_measure_limit_oracle(A, L2)
    exact = matrix_measure(A, L2).value
    assert abs(est.extrapolated - exact) < abs(est.value - exact)


def test_oracle_errors():
    with pytest.raises(ValueError):
        matrix_measure_limit_oracle(np.eye(2), L2, [])
    with pytest.raises(ValueError):
        matrix_measure_limit_oracle(np.eye(2), L2, [1e-4, 1e-3])
    with pytest.raises(ValueError):
        matrix_measure_limit_oracle(np.eye(2), L2, [1e-3, -1e-4])
    with pytest.raises(OracleUnderflowError):
        matrix_measure_limit_oracle(np.eye(2), L2, [1e-3, 1e-17])


def test_oracle_zero_matrix_is_fine():
    assert matrix_measure_limit_oracle(np.zeros((2, 2)), LINF, [1e-20]).value == 0.0


# --- measure axioms (property-based) -------------------------------------------

NORMS = [L1, L2, LINF, NormSpec.weighted(np.array([[2.0, 0.3, 0.0], [0.3, 1.0, 0.1], [0.0, 0.1, 0.5]]))]


@pytest.mark.parametrize("norm", NORMS, ids=lambda n: n.kind)
@settings(max_examples=60, deadline=None)
@given(A=square(3), B=square(3), alpha=st.floats(0, 5), beta=st.floats(-5, 5))
def test_measure_axioms(norm, A, B, alpha, beta):
    mu = lambda M: matrix_measure(M, norm).value
    scale = 1.0 + induced_norm(A, norm) + induced_norm(B, norm)
    slack = 1e-9 * scale * (1 + alpha + abs(beta))
    assert abs(mu(alpha * A) - alpha * mu(A)) <= slack
    assert mu(A + B) <= mu(A) + mu(B) + slack
    assert abs(mu(A + beta * np.eye(3)) - (mu(A) + beta)) <= slack
    nrm = induced_norm(A, norm)
    assert -nrm - slack <= mu(A) <= nrm + slack
    assert np.max(np.linalg.eigvals(A).real) <= mu(A) + 1e-7 * scale
