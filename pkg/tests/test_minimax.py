import math

import cvxpy as cp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corner_lightning.geometry import SectorDomain
from corner_lightning.minimax import (
    MinimaxProblem,
    RankDeficientError,
    arnoldi_basis,
    circle_samples,
    domain_samples,
    near_best_certificate,
    solve_minimax,
)


def pole2(z):
    return 1.0 / (z - 2.0)


def socp_minimax(z, f, degree):
    """Discrete complex minimax by second-order cone programming."""
    s = np.max(np.abs(z))
    V = (z[:, None] / s) ** np.arange(degree + 1)
    c = cp.Variable(degree + 1, complex=True)
    t = cp.Variable()
    prob = cp.Problem(cp.Minimize(t), [cp.abs(f - V @ c) <= t])
    prob.solve(solver="CLARABEL")
    return float(t.value)


@pytest.mark.parametrize("degree", [0, 2, 4, 6])
def test_matches_socp_on_sector(degree):
    z = domain_samples(SectorDomain(0.5, math.pi / 4), degree)
    f = np.sqrt(z)
    res = solve_minimax(MinimaxProblem(z, f, degree))
    opt = socp_minimax(z, f, degree)
    assert res.converged
    assert res.lower_bound <= opt * (1 + 1e-6)
    assert opt * (1 - 1e-6) <= res.error_estimate <= opt * (1 + 1.5e-3)


def test_pole_target_analytic_value():
    z = circle_samples(256)
    for n in range(0, 13):
        res = solve_minimax(MinimaxProblem.from_function(pole2, z, n))
        assert res.converged
        assert res.error_estimate == pytest.approx(1 / (3 * 2**n), rel=2e-3)


def test_pole_target_successive_ratios():
    z = circle_samples(256)
    est = [solve_minimax(MinimaxProblem.from_function(pole2, z, n)).error_estimate for n in range(3, 13)]
    ratios = np.array(est[:-1]) / np.array(est[1:])
    assert np.all((ratios >= 1.8) & (ratios <= 2.2))
    assert abs(ratios[-1] - 2) < 0.01


def test_degree_zero_midpoint():
    res = solve_minimax(MinimaxProblem(np.array([0.0, 1.0]), np.array([0.0, 1.0]), 0))
    assert res(0.3) == pytest.approx(0.5, abs=1e-12)
    assert res.error_estimate == pytest.approx(0.5, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    coeffs=st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                    min_size=1, max_size=8),
)
def test_exact_polynomial_recovery(coeffs):
    n = len(coeffs) - 1
    z = domain_samples(SectorDomain(0.5, math.pi / 4), n)
    p = lambda x: np.polynomial.polynomial.polyval(x, coeffs)
    res = solve_minimax(MinimaxProblem.from_function(p, z, n))
    assert res.error_estimate <= 1e-10
    fine = domain_samples(SectorDomain(0.5, math.pi / 4), 4 * (n + 1) - 1)
    assert near_best_certificate(res, fine, p) == 1.0


def test_lawson_lower_bound_monotone():
    for f in (pole2, np.sqrt, np.exp):
        z = domain_samples(SectorDomain(0.5, math.pi / 4), 8)
        res = solve_minimax(MinimaxProblem.from_function(f, z, 8))
        h = np.array(res.history)
        # slack at the rounding level of the data, not of the (tiny) error
        assert np.all(np.diff(h) >= -1e-12 * h.max() - 1e-15 * np.max(np.abs(f(z))))
        assert res.lower_bound <= res.error_estimate


def test_scale_equivariance():
    z = circle_samples(128)
    c = 3.7 - 2.1j
    a = solve_minimax(MinimaxProblem.from_function(pole2, z, 6))
    b = solve_minimax(MinimaxProblem(z, c * pole2(z), 6))
    assert np.allclose(b.coefficients, c * a.coefficients, rtol=1e-12, atol=1e-12 * abs(c))
    assert b.error_estimate == pytest.approx(abs(c) * a.error_estimate, rel=1e-12)


def test_arnoldi_gram():
    z = domain_samples(SectorDomain(0.5, math.pi / 4), 63)  # 512 samples
    assert z.size == 512
    basis, Q = arnoldi_basis(z, 30)
    G = Q.conj().T @ Q / z.size
    assert np.max(np.abs(G - np.eye(31))) <= 1e-8
    assert np.allclose(basis.evaluate(z), Q, atol=1e-10)


def test_basis_spans_monomials(rng):
    z = circle_samples(64)
    basis, Q = arnoldi_basis(z, 5)
    coef = rng.normal(size=6)
    vals = np.polynomial.polynomial.polyval(z, coef)
    c, *_ = np.linalg.lstsq(Q, vals, rcond=None)
    assert np.allclose(Q @ c, vals, atol=1e-12)


def test_near_best_certificate():
    z = circle_samples(256)
    res = solve_minimax(MinimaxProblem.from_function(pole2, z, 10))
    ratio = near_best_certificate(res, circle_samples(1024), pole2, samples=z)
    assert 1 - 1e-12 <= ratio <= 1.1


@pytest.mark.parametrize("f", [pole2, np.sqrt, np.exp])
def test_certificate_at_least_one(f):
    z = domain_samples(SectorDomain(0.5, math.pi / 4), 6)
    res = solve_minimax(MinimaxProblem.from_function(f, z, 6))
    fine = domain_samples(SectorDomain(0.5, math.pi / 4), 27)
    assert near_best_certificate(res, fine, f, samples=z) >= 1 - 1e-12


def test_problem_validation():
    z = circle_samples(8)
    with pytest.raises(ValueError, match="at least 10 samples"):
        MinimaxProblem(z, z, 4)
    with pytest.raises(RankDeficientError):
        MinimaxProblem(np.r_[z, z[:2]], np.r_[z, z[:2]], 2)
    with pytest.raises(ValueError):
        MinimaxProblem(z, z[:4], 1)
    with pytest.raises(ValueError):
        MinimaxProblem(z, z, -1)


def test_rank_deficient_basis():
    # three points cannot carry a degree-3 basis
    with pytest.raises(RankDeficientError):
        arnoldi_basis(np.array([0.0, 1.0, 2.0]), 3)


def test_nonconvergence_is_reported():
    z = domain_samples(SectorDomain(0.5, math.pi / 4), 10)
    res = solve_minimax(MinimaxProblem.from_function(np.sqrt, z, 10, max_iterations=2))
    assert not res.converged and res.iterations == 2
