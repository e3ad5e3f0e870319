"""Fast-decreasing polynomials and lightning rational approximation on
convex sectors, with a discrete minimax baseline and rate-fitting tools."""

from .fastdec import (
    AnchoredFastDec,
    BoundReport,
    LogComplex,
    certify_bounds,
    eval_anchored,
    eval_base,
    eval_bowtie,
    eval_reference,
)
from .geometry import (
    AnchoredSquare,
    ConvexPolygon,
    EvaluationGrid,
    SectorDomain,
    anchor_square,
    annular_sector_grid,
    boundary_grid,
    closest_point,
    interior_compact_grid,
)
from .lightning import (
    LightningScheme,
    QuadratureRule,
    RationalApproximant,
    SlitFunction,
    build_approximant,
    build_scheme,
    circular_part,
    eval_kernel_q,
    eval_phi,
    evaluate,
    slit_quadrature,
)
from .minimax import MinimaxProblem, MinimaxResult, near_best_certificate, solve_minimax
from .analysis import ConvergenceTable, RateFit, SweepConfig, convergence_sweep, fit_rate, sup_error

__version__ = "0.1.0"
