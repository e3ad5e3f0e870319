"""
Polynomial minimax baseline
===========================

Best polynomial approximation of ``1/(z - 2)`` on the unit circle has error
``1/(3 2^n)``.  Lawson's iteration on 256 samples recovers it.
"""

import numpy as np

from corner_lightning import SectorDomain
from corner_lightning.minimax import (
    MinimaxProblem,
    circle_samples,
    domain_samples,
    near_best_certificate,
    solve_minimax,
)

f = lambda z: 1 / (z - 2)
z = circle_samples(256)
fine = circle_samples(1024)
for n in range(0, 13, 2):
    res = solve_minimax(MinimaxProblem.from_function(f, z, n))
    ratio = near_best_certificate(res, fine, f, samples=z)
    print(f"n={n:2d} E_n~{res.error_estimate:.6e} exact {1 / (3 * 2**n):.6e} "
          f"fine/solve {ratio:.4f} iters {res.iterations}")

# Polynomials cannot do well on sqrt at a corner: the error only creeps down.
dom = SectorDomain(0.5, np.pi / 4)
for n in (4, 8, 16, 32):
    zs = domain_samples(dom, n)
    res = solve_minimax(MinimaxProblem.from_function(np.sqrt, zs, n))
    print(f"sqrt, n={n:2d}: {res.error_estimate:.3e}")
