"""Sup-norm error measurement, rate-law fits and convergence sweeps."""

from __future__ import annotations

import io
import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .geometry import EvaluationGrid, SectorDomain, boundary_grid
from .lightning import DEFAULT_SIGMA, SlitFunction, build_approximant

MODELS = ("exp-sqrt", "exp-linear")
MIN_FIT_N = 16
THREADS_ENV = "CORNER_LIGHTNING_THREADS"


class EvaluationError(RuntimeError):
    def __init__(self, point, cause):
        super().__init__(f"evaluation failed at z={point!r}: {cause}")
        self.point = point


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _evaluate_chunk(evaluator, z):
    try:
        return np.asarray(evaluator(z), dtype=complex)
    except Exception:
        # locate the failing point
        for p in z:
            try:
                evaluator(np.array([p]))
            except Exception as exc:
                raise EvaluationError(complex(p), exc) from exc
        raise


def sup_error(evaluator: Callable, reference, grid: EvaluationGrid | np.ndarray, threads: int | None = None) -> float:
    """``max |evaluator(z) - reference(z)|`` over the grid.

    ``reference`` is a callable or an array of exact values.  With
    ``threads > 1`` the grid is split into chunks; the max reduction does
    not depend on the split.
    """
    z = grid.points if isinstance(grid, EvaluationGrid) else np.asarray(grid, dtype=complex).ravel()
    if z.size == 0:
        raise ValueError("grid must be nonempty")
    ref = reference(z) if callable(reference) else np.asarray(reference, dtype=complex).ravel()
    threads = thread_cap() if threads is None else threads
    if threads <= 1:
        vals = _evaluate_chunk(evaluator, z)
    else:
        chunks = np.array_split(np.arange(z.size), threads)
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda idx: _evaluate_chunk(evaluator, z[idx]), chunks))
        vals = np.concatenate(parts)
    return float(np.max(np.abs(vals - ref)))


@dataclass(frozen=True)
class RateFit:
    model: str
    slope: float
    intercept: float
    r_squared: float
    points: int

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "slope": self.slope,
            "intercept": self.intercept,
            "rSquared": self.r_squared,
            "points": self.points,
        }


def fit_rate(points: Sequence[tuple[float, float]], model: str) -> RateFit:
    """Least-squares line through ``(sqrt n, log err)`` for ``"exp-sqrt"`` or
    ``(n, log err)`` for ``"exp-linear"``.  Nonpositive errors are dropped
    with a warning.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    kept = [(n, e) for n, e in points if e > 0 and math.isfinite(e)]
    if len(kept) < len(points):
        warnings.warn(f"dropped {len(points) - len(kept)} nonpositive error(s) from the fit")
    if len(kept) < 3:
        raise ValueError("a rate fit needs at least 3 positive errors")
    n = np.array([p[0] for p in kept], dtype=float)
    y = np.log([p[1] for p in kept])
    x = np.sqrt(n) if model == "exp-sqrt" else n
    A = np.stack([x, np.ones_like(x)], axis=1)
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    r2 = 1.0 if ss_tot == 0 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return RateFit(model, float(slope), float(intercept), r2, len(kept))


@dataclass
class SweepRow:
    n: int
    boundary_error: float
    interior_errors: dict
    error: str | None = None


@dataclass
class ConvergenceTable:
    rows: list
    interior_labels: list
    fits: dict = field(default_factory=dict)  # column name -> RateFit
    header: dict = field(default_factory=dict)  # provenance

    def columns(self) -> list[str]:
        return ["boundary_err"] + [f"interior_{lab}_err" for lab in self.interior_labels]

    def column(self, name: str) -> list[tuple[int, float]]:
        if name == "boundary_err":
            return [(r.n, r.boundary_error) for r in self.rows]
        lab = name[len("interior_") : -len("_err")]
        return [(r.n, r.interior_errors[lab]) for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(["n"] + self.columns()) + "\n")
        for r in self.rows:
            vals = [r.boundary_error] + [r.interior_errors[lab] for lab in self.interior_labels]
            buf.write(",".join([str(r.n)] + [f"{v:.17g}" for v in vals]) + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "header": self.header,
            "columns": ["n"] + self.columns(),
            "rows": [
                {
                    "n": r.n,
                    "boundary_err": r.boundary_error,
                    **{f"interior_{k}_err": v for k, v in r.interior_errors.items()},
                    **({"error": r.error} if r.error else {}),
                }
                for r in self.rows
            ],
            "fits": {k: v.to_dict() for k, v in self.fits.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass
class SweepConfig:
    target: SlitFunction
    domain: SectorDomain
    n_list: Sequence[int]
    sigma: float = DEFAULT_SIGMA
    boundary_count: int = 400
    interior: dict = field(default_factory=dict)  # label -> EvaluationGrid
    min_fit_n: int = MIN_FIT_N
    roundoff_floor: float = 1e-13
    threads: int | None = None


def _fit_column(points, model, min_n, floor):
    pts = [(n, e) for n, e in points if n >= min_n and math.isfinite(e)]
    if len(pts) < 3 or any(e <= 0 for _, e in pts):
        return None
    if all(e <= floor for _, e in pts):
        # converged to roundoff; a slope would fit noise
        return None
    return fit_rate(pts, model)


def convergence_sweep(config: SweepConfig) -> ConvergenceTable:
    """Build one approximant per n and measure boundary and interior sup errors.

    The boundary column is fitted against ``sqrt n``, interior columns
    against ``n``, using rows with ``n >= min_fit_n`` only.
    """
    ns = list(config.n_list)
    if not ns:
        raise ValueError("n-list must be nonempty")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n-list must be strictly increasing")
    bgrid = boundary_grid(config.domain, config.boundary_count, "exponential")
    f = config.target
    labels = list(config.interior)
    rows = []
    for n in ns:
        try:
            approx = build_approximant(f, config.domain, n, config.sigma)
            be = sup_error(approx, f, bgrid, config.threads)
            ie = {lab: sup_error(approx, f, g, config.threads) for lab, g in config.interior.items()}
            rows.append(SweepRow(n, be, ie))
        except Exception as exc:  # keep the row, record the failure
            rows.append(SweepRow(n, math.nan, {lab: math.nan for lab in labels}, error=str(exc)))

    table = ConvergenceTable(rows, labels)
    fit = _fit_column(table.column("boundary_err"), "exp-sqrt", config.min_fit_n, config.roundoff_floor)
    if fit:
        table.fits["boundary_err"] = fit
    for lab in labels:
        col = f"interior_{lab}_err"
        fit = _fit_column(table.column(col), "exp-linear", config.min_fit_n, config.roundoff_floor)
        if fit:
            table.fits[col] = fit
    return table
