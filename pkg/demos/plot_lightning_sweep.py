"""
Root-exponential convergence at a corner
========================================

Approximate ``sqrt(z)`` on the sector ``|z| <= 1/2, |arg z| <= pi/4`` by
rational functions with poles clustered exponentially at the vertex.  The
sup error on the boundary falls like ``exp(-C sqrt(n))``; away from the
vertex it falls geometrically in ``n``.
"""

import math

from corner_lightning import targets
from corner_lightning.analysis import SweepConfig, convergence_sweep
from corner_lightning.geometry import SectorDomain, annular_sector_grid
from corner_lightning.lightning import build_approximant

domain = SectorDomain(0.5, math.pi / 4)
inner = annular_sector_grid(0.1, 0.25, math.pi / 8, 200)

for name in ("zsqrt", "zpow03"):
    cfg = SweepConfig(targets.get_target(name), domain, [16, 36, 64, 100, 144, 196],
                      interior={"annulus": inner})
    table = convergence_sweep(cfg)
    print(name)
    print(table.to_csv())
    for col, fit in table.fits.items():
        print(f"  {col}: {fit.model} slope {fit.slope:.4f}, R^2 {fit.r_squared:.4f}")

# z^0.3 has the smaller Holder exponent and the shallower slope.
# Metadata of one approximant: poles, split radius, degrees, quadrature.
approx = build_approximant(targets.zsqrt(), domain, 64)
print(approx.to_json())
