"""Lightning rational approximation of functions with a branch point at a
sector vertex.

The target ``f`` is analytic in the slit disc ``A_pi`` (unit disc minus
``[-1, 0]``).  Its Cauchy integral splits into a slit part, driven by the jump
``f_+ - f_-`` across ``[-1, 0]``, and a circular part.  The slit Cauchy kernel
``1/(zeta - z)`` is replaced by the rational kernel

    q(zeta, z) = 1/(zeta - z) - phi(z)/phi(zeta) * R(zeta, z)/(zeta - z)

whose only poles in ``z`` are the exponentially clustered ``beta_j``; the
circular part is replaced by its truncated Taylor series.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fastdec import AnchoredFastDec, LogComplex, eval_anchored, eval_anchored_many, wrap_phase
from .geometry import AnchoredSquare, SectorDomain, anchor_square

DEFAULT_SIGMA = 2.0
DIAGONAL_TOL = 1e-14


class PoleError(ValueError):
    pass


class KernelDiagonalError(ValueError):
    pass


# --- pole / node scheme ----------------------------------------------------


@dataclass(frozen=True)
class LightningScheme:
    n: int
    sigma: float
    poles: np.ndarray
    nodes: np.ndarray
    eps_split: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sigma": self.sigma,
            "poles": [float(b) for b in self.poles],
            "epsilon": self.eps_split,
        }


def build_scheme(n: int, sigma: float = DEFAULT_SIGMA) -> LightningScheme:
    """Poles ``beta_j = -exp(-sigma*j/sqrt(n))`` and nodes ``alpha_0 = 0``,
    ``alpha_j = -beta_j``.  The poles cluster at the branch point 0 and the
    smallest one has modulus ``eps = exp(-sigma*(n-1)/sqrt(n))``.
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    n = int(n)
    j = np.arange(n)
    poles = -np.exp(-sigma * j / math.sqrt(n))
    nodes = -poles
    nodes[0] = 0.0
    eps = math.exp(-sigma * (n - 1) / math.sqrt(n))
    return LightningScheme(n=n, sigma=float(sigma), poles=poles, nodes=nodes, eps_split=eps)


def log_phi(scheme: LightningScheme, z) -> LogComplex:
    """``phi(z) = prod(z - alpha_j) / prod(z - beta_j)`` as a sum of logs.

    Exact zeros at the nodes give ``-inf``; poles give ``+inf``.
    """
    z = np.asarray(z, dtype=complex)
    za = z[..., None] - scheme.nodes
    zb = z[..., None] - scheme.poles
    with np.errstate(divide="ignore"):
        lm = np.sum(np.log(np.abs(za)), axis=-1) - np.sum(np.log(np.abs(zb)), axis=-1)
    ph = np.sum(np.angle(za), axis=-1) - np.sum(np.angle(zb), axis=-1)
    ph = np.where(np.isfinite(lm), ph, 0.0)
    return LogComplex(lm, wrap_phase(ph))


def eval_phi(scheme: LightningScheme, z) -> LogComplex:
    z = np.asarray(z, dtype=complex)
    if np.any(np.isin(z, scheme.poles)):
        raise PoleError("evaluation at pole")
    return log_phi(scheme, z)


def _kernel_ratio(lphi_z, lphi_t, lR):
    """``phi(z)/phi(t) * R(t, z)`` from log-space pieces."""
    with np.errstate(invalid="ignore"):
        lm = lphi_z.log_magnitude - lphi_t.log_magnitude + lR.log_magnitude
    lm = np.where(np.isnan(lm), -np.inf, lm)
    ph = lphi_z.phase - lphi_t.phase + lR.phase
    with np.errstate(over="ignore"):
        return np.exp(lm) * np.exp(1j * ph)


def _on_diagonal(t, z):
    # relative test: nodes reach down to ~1e-30 near the corner
    return np.abs(t - z) < DIAGONAL_TOL * np.maximum(np.abs(t), np.abs(z))


def eval_kernel_q(scheme: LightningScheme, fastdec_degree: int, square: AnchoredSquare, zeta, z):
    """Rational kernel ``q(zeta, z)`` for a single slit point ``zeta``.

    ``fastdec_degree`` is the anchored degree parameter, so the reference
    polynomial has degree ``fastdec_degree // 3``; 0 switches the
    fast-decreasing factor off (``R == 1``).
    """
    zeta = complex(zeta)
    z = np.asarray(z, dtype=complex)
    if np.any(_on_diagonal(zeta, z)):
        raise KernelDiagonalError("kernel evaluated on diagonal")
    if np.any(np.isin(z, scheme.poles)):
        raise PoleError("evaluation at pole")
    if fastdec_degree == 0:
        lR = LogComplex(np.zeros(z.shape), np.zeros(z.shape))
    else:
        lR = eval_anchored(AnchoredFastDec(fastdec_degree, square), z)
    ratio = _kernel_ratio(log_phi(scheme, z), log_phi(scheme, zeta), lR)
    out = (1.0 - ratio) / (zeta - z)
    return out[()] if out.ndim == 0 else out


# --- slit quadrature ---------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss-Legendre rule on geometric panels ``[-e^-k, -e^-(k+1)]``."""

    panels: np.ndarray  # (K, 2) endpoints, left to right
    nodes_per_panel: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values) -> complex:
        return complex(np.dot(self.weights, values))


def slit_quadrature(min_scale: float, nodes_per_panel: int = 16) -> QuadratureRule:
    if not (0.0 < min_scale < 1.0):
        raise ValueError("min_scale must lie in (0, 1)")
    if nodes_per_panel < 4:
        raise ValueError("nodes_per_panel must be at least 4")
    n_panels = math.ceil(-math.log(min_scale))
    k = np.arange(n_panels)
    left = -np.exp(-k.astype(float))
    right = -np.exp(-(k + 1.0))
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    mid = 0.5 * (left + right)
    half = 0.5 * (right - left)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return QuadratureRule(np.stack([left, right], axis=1), nodes_per_panel, nodes, weights)


def default_min_scale(holder_exponent: float) -> float:
    """Cutoff ``tau`` with ``tau**delta / delta <= 1e-16`` (never above 1e-16)."""
    d = holder_exponent
    return min(1e-16, (1e-16 * d) ** (1.0 / d))


# --- targets -------------------------------------------------------------------


@dataclass(frozen=True)
class SlitFunction:
    """Target analytic in the slit disc, with ``f(z) = O(|z|^delta)`` at 0.

    ``boundary_value`` must accept arrays; on the circle it is called with
    ``exp(1j*theta)`` for ``theta`` in the open interval ``(-pi, pi)``.
    ``jump(t)`` returns ``f(t + 0i) - f(t - 0i)`` for ``t`` in ``(-1, 0)``.
    """

    name: str
    boundary_value: Callable
    jump: Callable
    holder_exponent: float

    def __post_init__(self):
        if not self.holder_exponent > 0:
            raise ValueError("holder exponent must be positive")

    def __call__(self, z):
        return self.boundary_value(np.asarray(z, dtype=complex))

    def holder_constant(self, samples: int = 64) -> float:
        """Sampled ``max |f(z)| / |z|^delta`` near the corner."""
        r = np.logspace(-12, -1, samples)
        z = np.concatenate([r * np.exp(1j * a) for a in np.linspace(-3.0, 3.0, 7)])
        return float(np.max(np.abs(self(z)) / np.abs(z) ** self.holder_exponent))

    def jump_constant(self, samples: int = 200) -> float:
        """Sampled ``max |jump(t)| / |t|^delta`` on the slit."""
        t = -np.logspace(-16, 0, samples)
        return float(np.max(np.abs(self.jump(t)) / np.abs(t) ** self.holder_exponent))

    def __add__(self, other: "SlitFunction") -> "SlitFunction":
        return SlitFunction(
            f"({self.name})+({other.name})",
            lambda z: self.boundary_value(z) + other.boundary_value(z),
            lambda t: self.jump(t) + other.jump(t),
            min(self.holder_exponent, other.holder_exponent),
        )

    def scaled(self, c: complex) -> "SlitFunction":
        return SlitFunction(
            f"{c}*({self.name})",
            lambda z: c * self.boundary_value(z),
            lambda t: c * self.jump(t),
            self.holder_exponent,
        )


# --- circular part -------------------------------------------------------------


def _circle_rule(m: int, nodes_per_panel: int = 24):
    n_panels = max(16, math.ceil((m + 16) / 4))
    edges = np.linspace(-np.pi, np.pi, n_panels + 1)
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    theta = (mid[:, None] + half[:, None] * x).ravel()
    weights = (half[:, None] * w).ravel()
    return theta, weights


def circular_part(f: SlitFunction, domain: SectorDomain | None, degree: int) -> np.ndarray:
    """Taylor coefficients ``c_k = (1/2pi) int f(e^{it}) e^{-ikt} dt`` of the
    circular Cauchy integral, ``k = 0..degree``.

    On ``|z| <= rho`` the truncation error is ``O(rho^degree)``.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    theta, weights = _circle_rule(degree)
    fv = f(np.exp(1j * theta))
    k = np.arange(degree + 1)
    return np.exp(-1j * np.outer(k, theta)) @ (weights * fv) / (2 * np.pi)


# --- the approximant -------------------------------------------------------------


@dataclass(frozen=True)
class RationalApproximant:
    n: int
    scheme: LightningScheme
    quadrature: QuadratureRule
    target: SlitFunction
    circular_coeffs: np.ndarray
    half_side: float
    fastdec_degree: int
    # precomputed per quadrature node
    _anchors: np.ndarray
    _rotations: np.ndarray
    _lphi_nodes: LogComplex
    _coef: np.ndarray  # w_i * jump(t_i) / (2 pi i)

    @property
    def degrees(self) -> dict:
        return {
            "slit_order": 2 * self.scheme.n,
            "fastdec_reference_degree": self.fastdec_degree // 3,
            "circular_degree": len(self.circular_coeffs) - 1,
        }

    def metadata(self) -> dict:
        return {
            "n": self.n,
            "sigma": self.scheme.sigma,
            "poles": [float(b) for b in self.scheme.poles],
            "epsilon": self.scheme.eps_split,
            "degrees": self.degrees,
            "quadrature": {
                "panels": int(len(self.quadrature.panels)),
                "nodes_per_panel": self.quadrature.nodes_per_panel,
                "min_scale": float(-self.quadrature.panels[-1, 1]),
            },
            "half_side": self.half_side,
        }

    def to_json(self) -> str:
        return json.dumps(self.metadata(), indent=2)

    def __call__(self, z):
        return evaluate(self, z)


def build_approximant(
    f: SlitFunction,
    domain: SectorDomain,
    n: int,
    sigma: float = DEFAULT_SIGMA,
    *,
    nodes_per_panel: int = 16,
    min_scale: float | None = None,
    half_side: float | None = None,
    circular_degree: int | None = None,
) -> RationalApproximant:
    """Rational approximant of ``f`` on the closed sector ``domain``.

    The pole scheme and the fast-decreasing factor both use ``n // 2``; each
    quadrature node anchors its own square against the sector with half-side
    ``2*(1 + rho)`` unless ``half_side`` is given.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n // 2
    scheme = build_scheme(m, sigma)
    quad = slit_quadrature(min_scale or default_min_scale(f.holder_exponent), nodes_per_panel)
    lam = 2.0 * (1.0 + domain.rho) if half_side is None else float(half_side)

    anchors = quad.nodes.astype(complex)
    squares = [anchor_square(domain, t, lam) for t in anchors]
    rotations = np.array([s.rotation for s in squares])

    coef = quad.weights * f.jump(quad.nodes) / (2j * np.pi)
    cc = circular_part(f, domain, n if circular_degree is None else circular_degree)
    return RationalApproximant(
        n=n,
        scheme=scheme,
        quadrature=quad,
        target=f,
        circular_coeffs=cc,
        half_side=lam,
        fastdec_degree=m,
        _anchors=anchors,
        _rotations=rotations,
        _lphi_nodes=log_phi(scheme, anchors),
        _coef=np.asarray(coef, dtype=complex),
    )


def _error_kernel(approx: RationalApproximant, z: np.ndarray) -> np.ndarray:
    """``phi(z)/phi(t) * R(t, z)`` for every (node, point) pair."""
    lphi_z = log_phi(approx.scheme, z)
    lR = eval_anchored_many(
        approx.fastdec_degree,
        approx._anchors[:, None],
        approx._rotations[:, None],
        approx.half_side,
        z[None, :],
    )
    lt = approx._lphi_nodes
    return _kernel_ratio(
        LogComplex(lphi_z.log_magnitude[None, :], lphi_z.phase[None, :]),
        LogComplex(lt.log_magnitude[:, None], lt.phase[:, None]),
        lR,
    )


CHUNK = 512


def _check_points(approx: RationalApproximant, z: np.ndarray):
    if np.any(np.isin(z, approx.scheme.poles)):
        bad = z[np.isin(z, approx.scheme.poles)][0]
        raise PoleError(f"evaluation at pole z={bad}")
    if z.size:
        t = approx._anchors
        for s in range(0, z.size, CHUNK):
            zc = z[s : s + CHUNK]
            hit = np.any(_on_diagonal(t[:, None], zc[None, :]), axis=0)
            if np.any(hit):
                raise KernelDiagonalError(f"kernel evaluated on diagonal at z={zc[hit][0]}")


def evaluate_slit(approx: RationalApproximant, z):
    """Slit (rational) part only; valid anywhere off the poles."""
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    _check_points(approx, flat)
    out = np.empty(flat.shape, dtype=complex)
    t = approx._anchors
    for s in range(0, flat.size, CHUNK):
        zc = flat[s : s + CHUNK]
        ratio = _error_kernel(approx, zc)
        q = (1.0 - ratio) / (t[:, None] - zc[None, :])
        # row-wise reduction: each value is independent of how z was batched
        out[s : s + CHUNK] = np.sum(approx._coef[:, None] * q, axis=0)
    out = out.reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def evaluate_circular(approx: RationalApproximant, z):
    return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), approx.circular_coeffs)


def evaluate(approx: RationalApproximant, z):
    """Value of the rational approximant at ``z`` (scalar or array)."""
    out = evaluate_slit(approx, z) + evaluate_circular(approx, z)
    return out[()] if np.ndim(out) == 0 else out


def tail_contributions(approx: RationalApproximant, z) -> tuple[np.ndarray, np.ndarray]:
    """Slit error split into the part from ``|t| < eps`` and the rest.

    Returns ``(I_eps, I_1)`` with ``f - r ~= I_eps + I_1`` plus the circular
    truncation, where each piece is the quadrature of
    ``jump(t)/(2 pi i) * phi(z)/phi(t) * R(t, z)/(t - z)``.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_points(approx, z)
    t = approx._anchors
    integrand = approx._coef[:, None] * _error_kernel(approx, z) / (t[:, None] - z[None, :])
    near = np.abs(t) < approx.scheme.eps_split
    return integrand[near].sum(axis=0), integrand[~near].sum(axis=0)


def residue(approx: RationalApproximant, center: complex, radius: float, samples: int = 128) -> complex:
    """Trapezoid estimate of the slit part's residue inside a small circle."""
    s = np.exp(2j * np.pi * np.arange(samples) / samples)
    vals = evaluate_slit(approx, center + radius * s)
    return complex(np.mean(vals * radius * s))
