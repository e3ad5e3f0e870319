"""Compact convex domains, metric projection onto their boundary, anchored
squares and deterministic evaluation grids.

Points are plain Python/numpy complex numbers throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

# relative slack used when deciding "on the boundary" vs "strictly inside"
BOUNDARY_TOL = 1e-12


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class SectorDomain:
    """Closed circular sector ``rho * A_theta`` with vertex at the origin.

    ``A_theta = {|z| < 1, |arg z| < theta}``; the sector is symmetric about
    the positive real axis.
    """

    rho: float
    theta: float

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise GeometryError(f"rho must lie in (0, 1), got {self.rho}")
        if not (0.0 < self.theta < math.pi / 2):
            raise GeometryError(f"theta must lie in (0, pi/2), got {self.theta}")

    @property
    def diameter(self) -> float:
        return self.rho * max(1.0, 2.0 * math.sin(self.theta))

    @property
    def inradius(self) -> float:
        s = math.sin(self.theta)
        return self.rho * s / (1.0 + s)

    @property
    def perimeter(self) -> float:
        return 2.0 * self.rho + 2.0 * self.rho * self.theta

    @property
    def incenter(self) -> complex:
        return complex(self.rho - self.inradius, 0.0)

    def boundary_distance(self, z) -> np.ndarray:
        """Distance from each z to the boundary (works inside and outside)."""
        z = np.asarray(z, dtype=complex)
        cands = [np.abs(z)]
        for sign in (1.0, -1.0):
            d = np.exp(1j * sign * self.theta)
            s = np.clip((z * np.conj(d)).real, 0.0, self.rho)
            cands.append(np.abs(z - s * d))
        ang = np.clip(np.angle(z), -self.theta, self.theta)
        cands.append(np.abs(z - self.rho * np.exp(1j * ang)))
        return np.min(cands, axis=0)

    def is_interior(self, z) -> np.ndarray:
        """True where z lies in the open sector, away from the boundary."""
        z = np.asarray(z, dtype=complex)
        # scale-relative slack: the corner is resolved down to tiny |z|
        tol = BOUNDARY_TOL * np.abs(z)
        inside = (np.abs(z) < self.rho) & (np.abs(np.angle(z)) < self.theta) & (z != 0)
        return inside & (self.boundary_distance(z) > tol)

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        tol = BOUNDARY_TOL * np.abs(z)
        inside = (np.abs(z) <= self.rho) & (np.abs(np.angle(z)) <= self.theta)
        return inside | (z == 0) | (self.boundary_distance(z) <= tol)

    def _boundary_candidates(self, zeta: complex) -> list[complex]:
        cands = [0j]
        for sign in (1.0, -1.0):
            d = complex(math.cos(self.theta), sign * math.sin(self.theta))
            s = min(max((zeta * d.conjugate()).real, 0.0), self.rho)
            cands.append(s * d)
        ang = min(max(np.angle(zeta), -self.theta), self.theta)
        cands.append(self.rho * complex(math.cos(ang), math.sin(ang)))
        return cands


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon given by counterclockwise vertices."""

    vertices: tuple

    def __post_init__(self):
        v = tuple(complex(p) for p in self.vertices)
        object.__setattr__(self, "vertices", v)
        if len(v) < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        if not all(np.isfinite([p.real for p in v] + [p.imag for p in v])):
            raise GeometryError("vertices must be finite")
        for k in range(len(v)):
            a, b, c = v[k - 1], v[k], v[(k + 1) % len(v)]
            cross = ((b - a).conjugate() * (c - b)).imag
            if cross <= 0:
                raise GeometryError(
                    "vertices must be counterclockwise with a strictly convex turn at each vertex"
                )

    @property
    def edges(self) -> list[tuple[complex, complex]]:
        v = self.vertices
        return [(v[k], v[(k + 1) % len(v)]) for k in range(len(v))]

    @property
    def diameter(self) -> float:
        v = np.array(self.vertices)
        return float(np.max(np.abs(v[:, None] - v[None, :])))

    @property
    def perimeter(self) -> float:
        return float(sum(abs(b - a) for a, b in self.edges))

    @property
    def incenter(self) -> complex:
        # Chebyshev center: maximise the minimum edge distance (small LP solved by scipy)
        from scipy.optimize import linprog

        A, b = [], []
        for p, q in self.edges:
            e = q - p
            nrm = complex(-e.imag, e.real) / abs(e)  # inward normal for CCW order
            # nrm . (x - p) >= r  <=>  -nrm.x + r <= -nrm.p
            A.append([-nrm.real, -nrm.imag, 1.0])
            b.append(-(nrm.real * p.real + nrm.imag * p.imag))
        res = linprog([0, 0, -1], A_ub=A, b_ub=b, bounds=[(None, None)] * 3)
        return complex(res.x[0], res.x[1])

    @property
    def inradius(self) -> float:
        return float(self.boundary_distance(self.incenter))

    def _signed_edge_distances(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = []
        for p, q in self.edges:
            e = q - p
            out.append(((z - p) * np.conj(e)).imag / abs(e))
        # positive inside for CCW ordering
        return np.array(out)

    def boundary_distance(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        dists = []
        for p, q in self.edges:
            e = q - p
            s = np.clip(((z - p) * np.conj(e)).real / abs(e) ** 2, 0.0, 1.0)
            dists.append(np.abs(z - (p + s * e)))
        return np.min(dists, axis=0)

    def is_interior(self, z) -> np.ndarray:
        tol = BOUNDARY_TOL * self.diameter
        return np.all(self._signed_edge_distances(z) > tol, axis=0)

    def contains(self, z) -> np.ndarray:
        tol = BOUNDARY_TOL * self.diameter
        return np.all(self._signed_edge_distances(z) >= -tol, axis=0)

    def _boundary_candidates(self, zeta: complex) -> list[complex]:
        out = []
        for p, q in self.edges:
            e = q - p
            s = min(max(((zeta - p) * e.conjugate()).real / abs(e) ** 2, 0.0), 1.0)
            out.append(p + s * e)
        return out


Domain = Union[SectorDomain, ConvexPolygon]


@dataclass(frozen=True)
class AnchoredSquare:
    """Square with ``anchor`` at the midpoint of one side.

    In rotated coordinates ``w = exp(-i*rotation) * (z - anchor)`` it is
    ``{-2*half_side <= Re w <= 0, |Im w| <= half_side}``.
    """

    anchor: complex
    rotation: float
    half_side: float

    def __post_init__(self):
        if not self.half_side > 0:
            raise GeometryError("half_side must be positive")

    def to_local(self, z):
        return np.exp(-1j * self.rotation) * (np.asarray(z, dtype=complex) - self.anchor)

    def contains(self, z, tol: float = 1e-12) -> np.ndarray:
        w = self.to_local(z)
        lam = self.half_side
        return (w.real <= tol) & (w.real >= -2 * lam - tol) & (np.abs(w.imag) <= lam + tol)


@dataclass(frozen=True)
class EvaluationGrid:
    points: np.ndarray
    description: str  # "boundary" | "interior" | "square"
    clustering: str = "none"
    label: str = field(default="", compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        if pts.size == 0:
            raise GeometryError("evaluation grid must be nonempty")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size


def closest_point(domain: Domain, zeta: complex) -> tuple[complex, float]:
    """Nearest boundary point of ``domain`` to an exterior or boundary ``zeta``.

    Ties go to the candidate with the smallest argument.
    """
    zeta = complex(zeta)
    if not (math.isfinite(zeta.real) and math.isfinite(zeta.imag)):
        raise GeometryError("point must be finite")
    if bool(domain.is_interior(zeta)):
        raise GeometryError("anchor must be exterior or boundary")
    if bool(domain.contains(zeta)):
        return zeta, 0.0
    cands = domain._boundary_candidates(zeta)
    dists = [abs(zeta - c) for c in cands]
    dmin = min(dists)
    tied = [c for c, d in zip(cands, dists) if d <= dmin * (1 + 1e-14)]
    best = min(tied, key=lambda c: (np.angle(c), c.real))
    return best, abs(zeta - best)


def default_half_side(domain: Domain, zeta: complex) -> float:
    """Half-side ``diam(K_eps)`` where eps is the distance of zeta from K."""
    _, eps = closest_point(domain, zeta)
    return domain.diameter + 2.0 * eps


def anchor_square(domain: Domain, zeta: complex, half_side: float | None = None) -> AnchoredSquare:
    """Square anchored at ``zeta``, facing the domain across the supporting line."""
    zeta0, dist = closest_point(domain, zeta)
    if dist == 0.0:
        raise GeometryError("anchor on the boundary: segment [zeta0, zeta] has zero length")
    lam = default_half_side(domain, zeta) if half_side is None else float(half_side)
    if not lam > 0:
        raise GeometryError("half_side must be positive")
    return AnchoredSquare(anchor=complex(zeta), rotation=float(np.angle(zeta - zeta0)), half_side=lam)


def _polyline(vertices, count: int) -> np.ndarray:
    """``count`` points evenly spaced by arclength along a closed polyline."""
    v = np.asarray(vertices, dtype=complex)
    seg = np.abs(np.roll(v, -1) - v)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    s = np.arange(count) * cum[-1] / count
    k = np.searchsorted(cum, s, side="right") - 1
    frac = (s - cum[k]) / seg[k]
    return v[k] + frac * (np.roll(v, -1)[k] - v[k])


def boundary_grid(domain: Domain, count: int, clustering: str = "none") -> EvaluationGrid:
    """Deterministic sample of the domain boundary.

    ``clustering="exponential"`` places geometrically graded points toward
    the corner(s), down to a spacing of 1e-15 relative to the domain size.
    """
    if count < 2:
        raise GeometryError("count must be at least 2")
    if clustering not in ("none", "exponential"):
        raise GeometryError(f"unknown clustering {clustering!r}")

    if isinstance(domain, SectorDomain):
        rho, th = domain.rho, domain.theta
        if clustering == "none":
            s = np.arange(count) * domain.perimeter / count
            pts = np.empty(count, dtype=complex)
            up = s <= rho
            arc = (s > rho) & (s < rho + 2 * rho * th)
            down = s >= rho + 2 * rho * th
            pts[up] = s[up] * np.exp(1j * th)
            pts[arc] = rho * np.exp(1j * (th - (s[arc] - rho) / rho))
            pts[down] = (domain.perimeter - s[down]) * np.exp(-1j * th)
        else:
            n_ray = max(1, (3 * count) // 8)
            n_arc = max(0, count - 1 - 2 * n_ray)
            radii = rho * np.logspace(-15, 0, n_ray)
            ang = np.linspace(th, -th, n_arc + 2)[1:-1]
            pts = np.concatenate(
                [[0j], radii * np.exp(1j * th), rho * np.exp(1j * ang), radii[::-1] * np.exp(-1j * th)]
            )
        return EvaluationGrid(pts, "boundary", clustering)

    v = np.asarray(domain.vertices)
    if clustering == "none":
        return EvaluationGrid(_polyline(v, count), "boundary", clustering)
    per_edge = max(2, count // len(v))
    half = per_edge // 2
    t = np.concatenate([np.logspace(-15, np.log10(0.5), half), 1 - np.logspace(np.log10(0.5), -15, per_edge - half)[1:]])
    pts = [np.concatenate([[p], p + t * (q - p)]) for p, q in domain.edges]
    return EvaluationGrid(np.concatenate(pts), "boundary", clustering)


def interior_compact_grid(domain: Domain, margin: float, count: int) -> EvaluationGrid:
    """Points on the boundary of ``{z in K : dist(z, bd K) >= margin}``.

    That inner parallel set is convex, so it is traced radially from the
    incenter; by the maximum principle its boundary carries the sup norm of
    anything analytic inside K.
    """
    if not margin > 0:
        raise GeometryError("margin must be positive")
    if margin >= domain.inradius:
        raise GeometryError(f"margin {margin} leaves an empty compact (inradius {domain.inradius:.6g})")
    if count < 1:
        raise GeometryError("count must be positive")
    c = domain.incenter
    dirs = np.exp(2j * np.pi * np.arange(count) / count)
    lo = np.zeros(count)
    hi = np.full(count, 2.0 * domain.diameter)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        z = c + mid * dirs
        ok = domain.is_interior(z) & (domain.boundary_distance(z) >= margin)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return EvaluationGrid(c + lo * dirs, "interior", "none", label=f"margin{margin:g}")


def annular_sector_grid(r_min: float, r_max: float, half_angle: float, count: int) -> EvaluationGrid:
    """Boundary samples of ``{r_min <= |z| <= r_max, |arg z| <= half_angle}``."""
    if not (0 < r_min < r_max) or not (0 < half_angle < math.pi):
        raise GeometryError("need 0 < r_min < r_max and 0 < half_angle < pi")
    lengths = np.array([r_max - r_min, 2 * half_angle * r_max, r_max - r_min, 2 * half_angle * r_min])
    k = np.maximum(2, np.round(count * lengths / lengths.sum()).astype(int))
    radial = np.linspace(r_min, r_max, k[0], endpoint=False)
    outer = r_max * np.exp(1j * np.linspace(-half_angle, half_angle, k[1], endpoint=False))
    back = np.linspace(r_max, r_min, k[2], endpoint=False)
    inner = r_min * np.exp(1j * np.linspace(half_angle, -half_angle, k[3], endpoint=False))
    pts = np.concatenate(
        [radial * np.exp(-1j * half_angle), outer, back * np.exp(1j * half_angle), inner]
    )
    return EvaluationGrid(pts, "interior", "none", label="annulus")


def square_grid(square: AnchoredSquare, density: int) -> EvaluationGrid:
    lam = square.half_side
    x = np.linspace(-2 * lam, 0.0, density)
    y = np.linspace(-lam, lam, density)
    w = (x[None, :] + 1j * y[:, None]).ravel()
    return EvaluationGrid(square.anchor + np.exp(1j * square.rotation) * w, "square")
