import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corner_lightning.fastdec import (
    AnchoredFastDec,
    LogComplex,
    certify_bounds,
    eval_anchored,
    eval_base,
    eval_bowtie,
    eval_reference,
    wrap_phase,
)
from corner_lightning.geometry import AnchoredSquare, SectorDomain, anchor_square, boundary_grid


def exact_base(x: Fraction, y: Fraction):
    """r(x+iy) in exact rational arithmetic, returned as (re, im)."""
    a = (1 + x, y)
    b = (1 + x * x - y * y, 2 * x * y)
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def test_eval_base_examples():
    assert eval_base(0) == 1
    re, im = exact_base(Fraction(-1, 3), Fraction(0))
    assert (re, im) == (Fraction(20, 27), 0)
    assert eval_base(-1 / 3) == pytest.approx(float(re), abs=1e-15)
    re, im = exact_base(Fraction(0), Fraction(1, 3))
    assert (re, im) == (Fraction(8, 9), Fraction(8, 27))
    v = eval_base(1j / 3)
    assert v == pytest.approx(8 / 9 + 8j / 27, abs=1e-15)
    assert abs(v) == pytest.approx(math.sqrt(640 / 729), rel=1e-15)


def test_eval_reference_at_origin():
    for n in (0, 1, 7, 10**6):
        r = eval_reference(n, 0)
        assert r.modulus == 1 and r.phase == 0


def test_eval_reference_exact_powers():
    # (20/27)^50 and (640/729)^5 via exact rational powers
    exact = Fraction(20, 27) ** 50
    assert eval_reference(50, -1 / 3).modulus == pytest.approx(float(exact), rel=1e-12)
    assert float(exact) == pytest.approx(3.0e-7, rel=0.02)
    exact = Fraction(640, 729) ** 5
    assert eval_reference(10, 1j / 3).modulus == pytest.approx(float(exact), rel=1e-12)
    assert float(exact) == pytest.approx(0.5214, abs=2e-4)  # quoted value is 0.52151 truncated


def test_eval_reference_matches_direct_power(rng):
    z = rng.uniform(-0.7, 0.05, 500) + 1j * rng.uniform(-0.4, 0.4, 500)
    for n in (1, 5, 20):
        direct = eval_base(z) ** n
        got = eval_reference(n, z).value
        assert np.allclose(got, direct, rtol=1e-12, atol=0)


def test_no_overflow_for_huge_degree():
    r = eval_reference(10**6, np.array([0.5 + 0.5j, -0.5, 1e-3j]))
    assert np.all(np.isfinite(r.log_magnitude))
    assert r.log_magnitude[0] > 1e5  # modulus would overflow as a float
    assert np.all((r.phase > -np.pi) & (r.phase <= np.pi))


def test_exact_zero_encoded_as_minus_infinity():
    r = eval_reference(3, np.array([-1.0, 1j]))
    assert np.all(np.isneginf(r.log_magnitude))
    assert np.all(r.modulus == 0)


def test_wrap_phase_range():
    x = np.array([-3 * np.pi, -np.pi, np.pi, 3 * np.pi, 7.0])
    w = wrap_phase(x)
    assert np.all((w > -np.pi) & (w <= np.pi))
    assert np.allclose(np.exp(1j * w), np.exp(1j * x))


@settings(max_examples=200, deadline=None)
@given(
    x=st.floats(-0.66, -0.01),
    y=st.floats(-0.33, 0.33),
    n=st.integers(1, 5000),
)
def test_log_magnitude_linear_in_degree(x, y, n):
    z = complex(x, y)
    one = eval_reference(1, z).log_magnitude
    assert eval_reference(n, z).log_magnitude == pytest.approx(n * one, rel=1e-15, abs=0)


def test_base_bounded_on_square_sides():
    s = np.linspace(-1 / 3, 1 / 3, 2500)
    sides = np.concatenate([
        s * 1j,                      # right side Re = 0
        -2 / 3 + s * 1j,             # left side
        (s - 1 / 3) + 1j / 3,        # top
        (s - 1 / 3) - 1j / 3,        # bottom
    ])
    assert sides.size == 10_000
    assert np.max(np.abs(eval_base(sides))) <= 1 + 1e-12


def test_extended_side_growth_constant(rng):
    # |r(d + iv)|^2 <= 1 + c2*d on the strip just right of the square
    d = np.linspace(1e-3, 0.1, 100)
    v = np.linspace(-1, 1, 100)
    D, V = np.meshgrid(d, v)
    Vs = V * (1 / 3 + D)
    c2 = np.max((np.abs(eval_base(D + 1j * Vs)) ** 2 - 1) / D)
    assert 0 < c2 < 10
    d = rng.uniform(1e-6, 0.1, 10_000)
    v = rng.uniform(-1, 1, 10_000) * (1 / 3 + d)
    assert np.all(np.abs(eval_base(d + 1j * v)) ** 2 <= 1 + 1.05 * c2 * d)


def test_eval_anchored_anchor_is_one():
    sq = AnchoredSquare(-0.3, math.pi, 3.0)
    r = eval_anchored(AnchoredFastDec(300, sq), -0.3)
    assert r.modulus == 1


def test_eval_anchored_compositional_identity(rng):
    sq = AnchoredSquare(0.2 - 0.4j, 1.1, 2.5)
    fd = AnchoredFastDec(61, sq)
    z = rng.normal(size=1000) + 1j * rng.normal(size=1000)
    w = np.exp(-1j * 1.1) * (z - (0.2 - 0.4j)) / (3 * 2.5)
    ref = eval_reference(20, w)
    got = eval_anchored(fd, z)
    assert np.array_equal(got.log_magnitude, ref.log_magnitude)
    assert np.array_equal(got.phase, ref.phase)


def test_eval_anchored_example_decays():
    fd = AnchoredFastDec(300, AnchoredSquare(-0.3, math.pi, 3.0))
    r = eval_anchored(fd, 0.2)
    w = np.exp(-1j * math.pi) * (0.2 + 0.3) / 9
    assert -2 / 3 <= w.real <= 0 and abs(w.imag) <= 1 / 3
    assert r.modulus < 1
    assert r.modulus == pytest.approx(abs(eval_base(w)) ** 100, rel=1e-12)


def test_anchored_bounded_on_domain():
    # the anchored square contains the domain, so |R| <= 1 there
    dom = SectorDomain(0.5, math.pi / 4)
    pts = boundary_grid(dom, 500).points
    for zeta in (-0.3, 1.0, 0.6j, -0.2 - 0.7j):
        fd = AnchoredFastDec(90, anchor_square(dom, zeta))
        assert np.max(eval_anchored(fd, pts).log_magnitude) <= 1e-12


def test_anchored_degree_validation():
    with pytest.raises(ValueError):
        AnchoredFastDec(0, AnchoredSquare(0, 0, 1))


def test_bowtie_symmetry_points():
    zeta = 0.7 + 0.4j
    for conv in ("anchored", "reference"):
        for z in (zeta, -zeta):
            r = eval_bowtie(30, zeta, z, 0.3, 2.0, convention=conv)
            assert r.modulus == pytest.approx(1.0, abs=1e-12)


def test_bowtie_matches_anchored_of_square(rng):
    zeta = 0.7 + 0.4j
    sq = AnchoredSquare(zeta**2, 0.3, 2.0)
    z = rng.normal(size=1000) + 1j * rng.normal(size=1000)
    got = eval_bowtie(30, zeta, z, 0.3, 2.0)
    ref = eval_anchored(AnchoredFastDec(30, sq), z**2)
    assert np.max(np.abs(got.log_magnitude - ref.log_magnitude)) <= 1e-12
    ref = eval_reference(30, np.exp(-0.3j) * (z**2 - zeta**2) / 6.0)
    got = eval_bowtie(30, zeta, z, 0.3, 2.0, convention="reference")
    assert np.max(np.abs(got.log_magnitude - ref.log_magnitude)) <= 1e-12
    with pytest.raises(ValueError):
        eval_bowtie(30, zeta, z, 0.3, 2.0, convention="other")


def test_certify_inner_bound():
    rep = certify_bounds(100, 200)
    assert rep.sup_inner <= 1 + 1e-12


def test_certify_extended_bound_uniform():
    reps = [certify_bounds(n, 200) for n in (10, 100, 1000)]
    c3 = max(r.c3 for r in reps)
    assert all(r.sup_extended <= math.exp(c3) for r in reps)
    assert all(r.sup_extended > 1 for r in reps)  # the extension really leaves the square
    assert math.exp(c3) < 20


def test_center_probe_exponent():
    target = -math.log(20 / 27)
    assert target == pytest.approx(0.30010, abs=1e-5)
    for n in (1, 10, 100, 1000):
        probes = dict(certify_bounds(n, 10).probes)
        assert probes[1.0] == pytest.approx(target, abs=1e-9)
        assert probes[0.25] < probes[0.5] < probes[1.0]


def test_certify_validation():
    with pytest.raises(ValueError):
        certify_bounds(0, 100)
    with pytest.raises(ValueError):
        certify_bounds(10, 5)


def test_report_json():
    doc = json.loads(certify_bounds(10, 20).to_json())
    assert set(doc) == {"n", "supInner", "supExtended", "c3", "probes"}
    assert [p[0] for p in doc["probes"]] == [0.25, 0.5, 1.0]


def test_logcomplex_arithmetic():
    a = LogComplex(np.log(2.0), 3.0)
    b = LogComplex(np.log(4.0), 1.0)
    assert (a * b).value == pytest.approx(a.value * b.value)
    assert (a / b).value == pytest.approx(a.value / b.value)
