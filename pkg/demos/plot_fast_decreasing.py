"""
Fast-decreasing polynomials
===========================

``R_n(z) = ((1 + z)(1 + z^2))^n`` is 1 at the origin, at most 1 on the square
``-2/3 <= Re z <= 0, |Im z| <= 1/3`` and decays like ``e^{-cn}`` inside it.
"""

import numpy as np

from corner_lightning import certify_bounds, eval_reference

# Values are kept in log space, so huge degrees are harmless.
z = np.array([0, -1 / 3, 1j / 3, -0.6 + 0.3j])
for n in (10, 100, 10**5):
    r = eval_reference(n, z)
    print(n, np.round(r.log_magnitude, 4))

# Certify the bounds on a grid.  Past the right edge |R_n| rises above 1,
# but only by a bounded factor once the square is grown by 1/n.
for n in (10, 100, 1000):
    rep = certify_bounds(n, 400)
    print(f"n={n:5d} inner={rep.sup_inner:.12f} extended={rep.sup_extended:.4f}",
          "decay exponents:", [round(c, 5) for _, c in rep.probes])

# The center exponent is exactly -log(20/27), whatever n is.
print("-log(20/27) =", -np.log(20 / 27))
