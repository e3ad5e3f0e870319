"""
Bowtie polynomials
==================

Composing with ``z -> z^2`` folds a bowtie (two sectors meeting at the
origin) onto one convex set.  The resulting polynomial equals 1 at both
``zeta`` and ``-zeta`` and is small elsewhere on the bowtie.
"""

import numpy as np

from corner_lightning.fastdec import eval_bowtie
from corner_lightning.geometry import SectorDomain, anchor_square

# Image of the bowtie |arg(+-z)| <= pi/8, |z| <= 0.7 under z^2.
image = SectorDomain(0.49, np.pi / 4)
zeta = 0.8 * np.exp(0.1j)
sq = anchor_square(image, zeta**2)

z = np.array([zeta, -zeta, 0.5, -0.5, 0.3j * np.exp(0.1j)])
for conv in ("anchored", "reference"):
    r = eval_bowtie(90, zeta, z, sq.rotation, sq.half_side, convention=conv)
    print(conv, np.round(r.modulus, 6))
