"""Independent reference computations shared by the tests."""

import numpy as np


def sector_boundary_samples(rho, theta, count):
    """Dense, evenly spread samples of the sector boundary (no library code)."""
    k = count // 3
    r = np.linspace(0.0, rho, k)
    ang = np.linspace(-theta, theta, count - 2 * k)
    return np.concatenate([r * np.exp(1j * theta), r * np.exp(-1j * theta), rho * np.exp(1j * ang)])


def polygon_boundary_samples(vertices, per_edge):
    v = np.asarray(vertices, dtype=complex)
    t = np.linspace(0.0, 1.0, per_edge, endpoint=False)
    return np.concatenate([a + t * (b - a) for a, b in zip(v, np.roll(v, -1))])


def brute_min_distance(points, samples, chunk=2000):
    points = np.atleast_1d(points)
    out = np.empty(points.size)
    for s in range(0, points.size, chunk):
        p = points[s : s + chunk]
        out[s : s + chunk] = np.min(np.abs(p[:, None] - samples[None, :]), axis=1)
    return out
