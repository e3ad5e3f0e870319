"""Fast-decreasing polynomials ``R_n(z) = ((1 + z)(1 + z^2))^n``.

``R_n`` equals 1 at the origin, is bounded by 1 on the reference square
``S_{1/3} = {-2/3 <= Re z <= 0, |Im z| <= 1/3}`` and decays geometrically in
its interior.  Everything is evaluated in log space so that degrees in the
millions neither overflow nor underflow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .geometry import AnchoredSquare

REFERENCE_HALF_SIDE = 1.0 / 3.0


def wrap_phase(x):
    """Map angles to (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(x, dtype=float), 2 * np.pi)


@dataclass(frozen=True)
class LogComplex:
    """Complex number(s) stored as ``exp(log_magnitude + i*phase)``.

    ``log_magnitude == -inf`` encodes an exact zero (phase 0).
    """

    log_magnitude: np.ndarray
    phase: np.ndarray

    @property
    def modulus(self):
        return np.exp(self.log_magnitude)

    @property
    def value(self):
        return np.exp(self.log_magnitude) * np.exp(1j * self.phase)

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        return LogComplex(
            self.log_magnitude + other.log_magnitude, wrap_phase(self.phase + other.phase)
        )

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        return LogComplex(
            self.log_magnitude - other.log_magnitude, wrap_phase(self.phase - other.phase)
        )


def _log_abs_1p(z):
    # log|1 + z| without cancellation for small z
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    with np.errstate(divide="ignore"):
        return 0.5 * np.log1p(2 * x + x * x + y * y)


def eval_base(z):
    """The cubic ``r(z) = (1 + z)(1 + z^2)``."""
    z = np.asarray(z, dtype=complex)
    out = (1 + z) * (1 + z * z)
    return out[()] if out.ndim == 0 else out


def log_base(z) -> LogComplex:
    z = np.asarray(z, dtype=complex)
    lm = _log_abs_1p(z) + _log_abs_1p(z * z)
    ph = np.angle(1 + z) + np.angle(1 + z * z)
    ph = np.where(np.isneginf(lm), 0.0, ph)
    return LogComplex(lm, wrap_phase(ph))


def eval_reference(n: int, z) -> LogComplex:
    """``R_n(z) = r(z)^n`` in log space."""
    if n < 0:
        raise ValueError("degree parameter must be nonnegative")
    if n == 0:
        z = np.asarray(z, dtype=complex)
        return LogComplex(np.zeros(z.shape), np.zeros(z.shape))
    b = log_base(z)
    return LogComplex(n * b.log_magnitude, wrap_phase(n * b.phase))


def _anchored_argument(anchor, rotation, half_side, z):
    """Map the anchored square onto S_{1/3} (the anchor goes to 0)."""
    return np.exp(-1j * np.asarray(rotation)) * (np.asarray(z, dtype=complex) - anchor) / (
        3.0 * np.asarray(half_side)
    )


@dataclass(frozen=True)
class AnchoredFastDec:
    """``R_{[n/3]}(e^{-i*rotation}(z - anchor) / (3*half_side))`` for one square."""

    degree_param: int
    square: AnchoredSquare

    def __post_init__(self):
        if self.degree_param < 1:
            raise ValueError("degree_param must be at least 1")

    @property
    def reference_degree(self) -> int:
        return self.degree_param // 3


def eval_anchored(fd: AnchoredFastDec, z) -> LogComplex:
    sq = fd.square
    w = _anchored_argument(sq.anchor, sq.rotation, sq.half_side, z)
    return eval_reference(fd.reference_degree, w)


def eval_anchored_many(degree_param: int, anchors, rotations, half_side, z) -> LogComplex:
    """Broadcasting form of :func:`eval_anchored` over arrays of squares."""
    w = _anchored_argument(anchors, rotations, half_side, z)
    return eval_reference(degree_param // 3, w)


def eval_bowtie(n: int, zeta, z, rotation: float, half_side: float, *, convention: str = "anchored") -> LogComplex:
    """Fast-decreasing polynomial for the bowtie, composed with ``z -> z^2``.

    ``rotation`` and ``half_side`` describe the square anchored at ``zeta^2``
    for the convex image domain.  ``convention="anchored"`` uses reference
    degree ``n // 3`` like :func:`eval_anchored`; ``"reference"`` uses ``n``
    directly.
    """
    zeta2 = complex(zeta) ** 2
    z2 = np.asarray(z, dtype=complex) ** 2
    if convention == "anchored":
        deg = n // 3
    elif convention == "reference":
        deg = n
    else:
        raise ValueError(f"unknown degree convention {convention!r}")
    return eval_reference(deg, _anchored_argument(zeta2, rotation, half_side, z2))


# --- certification ---------------------------------------------------------


@dataclass
class BoundReport:
    n: int
    sup_inner: float
    sup_extended: float
    probes: list = field(default_factory=list)  # [(eps, c_hat)]

    @property
    def c3(self) -> float:
        """Measured constant in ``sup_extended <= exp(c3)``."""
        return float(np.log(self.sup_extended))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "supInner": self.sup_inner,
            "supExtended": self.sup_extended,
            "c3": self.c3,
            "probes": [[e, c] for e, c in self.probes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


PROBE_EPS = (0.25, 0.5, 1.0)


def _sup_on_rect(n, x0, x1, y0, y1, density):
    x = np.linspace(x0, x1, density)
    y = np.linspace(y0, y1, density)
    z = x[None, :] + 1j * y[:, None]
    return float(np.exp(np.max(eval_reference(n, z).log_magnitude)))


def certify_bounds(n: int, grid_density: int) -> BoundReport:
    """Measure the bounds on ``R_n`` over S_{1/3} and its 1/n-neighbourhood.

    The extended region grows the square by ``1/n`` on every side, including
    to the right of the anchor, which is where ``|R_n|`` actually exceeds 1.
    Probe points sit on the axis at distance ``eps/3`` from the boundary.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if grid_density < 10:
        raise ValueError("grid density must be at least 10")
    h = REFERENCE_HALF_SIDE
    sup_inner = _sup_on_rect(n, -2 * h, 0.0, -h, h, grid_density)
    d = 1.0 / n
    sup_ext = _sup_on_rect(n, -2 * h - d, d, -h - d, h + d, grid_density)
    probes = []
    for eps in PROBE_EPS:
        z = -eps * h
        c_hat = -float(eval_reference(n, z).log_magnitude) / n
        probes.append((eps, c_hat))
    return BoundReport(n=n, sup_inner=sup_inner, sup_extended=sup_ext, probes=probes)
