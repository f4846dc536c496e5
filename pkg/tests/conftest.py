import numpy as np
import pytest

from contraction_kit import NormSpec

DIMS = (1, 2, 3, 5, 10)


def random_spd(rng, n, lo=0.1, hi=10.0):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    P = (Q * rng.uniform(lo, hi, size=n)) @ Q.T
    return 0.5 * (P + P.T)


def measure_corpus(per_dim=200, seed=20261016):
    """(A, norms) pairs: per dimension ``per_dim`` Gaussian matrices with all four norm kinds."""
    rng = np.random.default_rng(seed)
    out = []
    for n in DIMS:
        for _ in range(per_dim):
            A = rng.standard_normal((n, n))
            P = random_spd(rng, n)
            norms = [NormSpec.l1(), NormSpec.l2(), NormSpec.linf(), NormSpec.weighted(P)]
            out.append((A, norms))
    return out


@pytest.fixture(scope="session")
def corpus():
    return measure_corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def bisect_root(g, lo, hi, tol=1e-12):
    """Root of g on [lo, hi] by bisection; g(lo) and g(hi) must differ in sign."""
    glo = g(lo)
    assert glo * g(hi) < 0
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if (g(mid) > 0) == (glo > 0):
            lo, glo = mid, g(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


ACCEPTANCE_LINES = {}


def record_criterion(number, ok, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
