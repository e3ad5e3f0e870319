"""Discrete near-best polynomial approximation on a finite sample set.

The minimax error ``E_n(f)`` over the samples is estimated by Lawson's
iteratively reweighted least squares, in a polynomial basis orthogonalized
on the samples (Vandermonde with Arnoldi), so moderate degrees on clustered
samples stay well conditioned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import boundary_grid


class RankDeficientError(ValueError):
    pass


@dataclass(frozen=True)
class ArnoldiBasis:
    """Polynomials ``q_0..q_n`` with ``Q^H Q = M I`` on the M samples."""

    hessenberg: np.ndarray  # (n+1, n)
    degree: int

    def evaluate(self, z) -> np.ndarray:
        """Basis matrix at arbitrary points, shape (len(z), n+1)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        H = self.hessenberg
        W = np.ones((z.size, self.degree + 1), dtype=complex)
        for k in range(self.degree):
            w = z * W[:, k]
            w -= W[:, : k + 1] @ H[: k + 1, k]
            W[:, k + 1] = w / H[k + 1, k]
        return W


def arnoldi_basis(samples, degree: int) -> tuple[ArnoldiBasis, np.ndarray]:
    """Orthogonalize ``1, z, ..., z^n`` on ``samples``; returns (basis, Q)."""
    z = np.asarray(samples, dtype=complex).ravel()
    M = z.size
    Q = np.ones((M, degree + 1), dtype=complex)
    H = np.zeros((degree + 1, degree), dtype=complex)
    for k in range(degree):
        q = z * Q[:, k]
        # classical Gram-Schmidt, twice
        for _ in range(2):
            h = Q[:, : k + 1].conj().T @ q / M
            q = q - Q[:, : k + 1] @ h
            H[: k + 1, k] += h
        nrm = np.linalg.norm(q) / np.sqrt(M)
        if nrm <= 1e-13 * max(1.0, np.max(np.abs(z))):
            raise RankDeficientError(f"rank-deficient basis at degree {k + 1}: too few distinct samples")
        H[k + 1, k] = nrm
        Q[:, k + 1] = q / nrm
    return ArnoldiBasis(H, degree), Q


@dataclass(frozen=True)
class MinimaxProblem:
    samples: np.ndarray
    values: np.ndarray
    degree: int
    max_iterations: int = 200
    oscillation_tol: float = 1e-3

    def __post_init__(self):
        z = np.asarray(self.samples, dtype=complex).ravel()
        f = np.asarray(self.values, dtype=complex).ravel()
        object.__setattr__(self, "samples", z)
        object.__setattr__(self, "values", f)
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if z.shape != f.shape:
            raise ValueError("samples and values differ in length")
        if z.size < 2 * (self.degree + 1):
            raise ValueError(f"need at least {2 * (self.degree + 1)} samples for degree {self.degree}")
        if np.unique(z).size != z.size:
            raise RankDeficientError("duplicate samples")

    @classmethod
    def from_function(cls, f, samples, degree: int, **kw) -> "MinimaxProblem":
        samples = np.asarray(samples, dtype=complex)
        return cls(samples, f(samples), degree, **kw)


@dataclass
class MinimaxResult:
    coefficients: np.ndarray
    basis: ArnoldiBasis
    error_estimate: float
    lower_bound: float
    weights: np.ndarray
    converged: bool
    iterations: int
    history: list = field(default_factory=list)  # weighted 2-norm errors

    def __call__(self, z):
        return self.basis.evaluate(z) @ self.coefficients


def _weighted_lstsq(Q, f, w):
    sw = np.sqrt(w)
    c, *_ = np.linalg.lstsq(sw[:, None] * Q, sw * f, rcond=None)
    return c


def solve_minimax(problem: MinimaxProblem) -> MinimaxResult:
    """Lawson iteration for ``min_p max_i |f_i - p(z_i)|``.

    Each step solves a weighted least-squares problem; the weighted 2-norm
    error is a lower bound on the discrete minimax value and the max error an
    upper bound.  Convergence means the two agree to ``oscillation_tol``.
    """
    basis, Q = arnoldi_basis(problem.samples, problem.degree)
    f = problem.values
    M = f.size
    w = np.full(M, 1.0 / M)
    scale = max(np.max(np.abs(f)), 1e-300)

    best = None
    history = []
    converged = False
    it = 0
    for it in range(1, problem.max_iterations + 1):
        c = _weighted_lstsq(Q, f, w)
        e = np.abs(f - Q @ c)
        lower = float(np.sqrt(np.sum(w * e**2)))
        upper = float(np.max(e))
        history.append(lower)
        if best is None or upper < best[1]:
            best = (c, upper)
        if upper <= 1e-14 * scale or upper <= (1.0 + problem.oscillation_tol) * lower:
            converged = True
            break
        we = w * e
        w = we / np.sum(we)

    c, upper = best
    return MinimaxResult(
        coefficients=c,
        basis=basis,
        error_estimate=upper,
        lower_bound=max(history),
        weights=w,
        converged=converged,
        iterations=it,
        history=history,
    )


def near_best_certificate(result: MinimaxResult, fine_grid, f, samples=None) -> float:
    """``sup |f - p|`` on ``fine_grid`` (plus the solve samples, if given)
    divided by the solve's error estimate.
    """
    z = np.asarray(fine_grid, dtype=complex).ravel()
    if samples is not None:
        z = np.concatenate([z, np.asarray(samples, dtype=complex).ravel()])
    sup = float(np.max(np.abs(f(z) - result(z))))
    if sup <= 1e-10 and result.error_estimate <= 1e-10:
        return 1.0
    return sup / result.error_estimate


def circle_samples(count: int, radius: float = 1.0, center: complex = 0.0) -> np.ndarray:
    return center + radius * np.exp(2j * np.pi * np.arange(count) / count)


def domain_samples(domain, degree: int) -> np.ndarray:
    """Default sample set: ``8(n+1)`` boundary points clustered toward corners."""
    return boundary_grid(domain, 8 * (degree + 1), "exponential").points
