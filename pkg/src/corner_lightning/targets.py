"""Catalog of slit-disc targets used by the sweeps."""

import numpy as np

from .lightning import SlitFunction


def power(delta: float, name: str | None = None) -> SlitFunction:
    """Principal branch ``z**delta``; jump ``2i sin(pi*delta) |t|**delta``."""
    s = 2j * np.sin(np.pi * delta)
    return SlitFunction(
        name or f"z^{delta:g}",
        lambda z: np.power(np.asarray(z, dtype=complex), delta),
        lambda t: s * np.abs(t) ** delta,
        delta,
    )


def _zero_jump(t):
    return np.zeros(np.shape(t), dtype=complex)


def zsqrt() -> SlitFunction:
    return SlitFunction(
        "zsqrt",
        lambda z: np.sqrt(np.asarray(z, dtype=complex)),
        lambda t: 2j * np.sqrt(np.abs(t)),
        0.5,
    )


def zsqrt_times_exp() -> SlitFunction:
    return SlitFunction(
        "zsqrt-times-exp",
        lambda z: np.sqrt(np.asarray(z, dtype=complex)) * np.exp(z),
        lambda t: 2j * np.sqrt(np.abs(t)) * np.exp(t),
        0.5,
    )


def entire_z2() -> SlitFunction:
    return SlitFunction("entire-z2", lambda z: np.asarray(z, dtype=complex) ** 2, _zero_jump, 2.0)


def zero() -> SlitFunction:
    return SlitFunction("zero", lambda z: np.zeros(np.shape(z), dtype=complex), _zero_jump, 1.0)


CATALOG = {
    "zsqrt": zsqrt,
    "zpow03": lambda: power(0.3, "zpow03"),
    "entire-z2": entire_z2,
    "zsqrt-times-exp": zsqrt_times_exp,
    "zero": zero,
}


def get_target(name: str) -> SlitFunction:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown target {name!r}; known: {', '.join(sorted(CATALOG))}") from None
