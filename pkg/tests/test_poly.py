import cmath

import pytest

from stokeslab.errors import MultipleTurningPoint
from stokeslab.poly import Poly, assert_simple, classified_real_segments, turning_points


def test_eval_horner():
    p = Poly([-1, 0, 1])  # z^2 - 1
    assert p(2) == 3
    assert p(1j) == -2
    q = Poly.from_roots([-2, -1, 1, 2])  # (z^2-1)(z^2-4)
    assert q(0) == 4


def test_eval_with_deriv_matches_difference_quotient():
    p = Poly([2, -3, 0, 5, 1j])
    z = 0.7 - 0.3j
    v, d = p.eval_with_deriv(z)
    assert v == p(z)
    h = 1e-7
    fd = (p(z + h) - p(z - h)) / (2 * h)
    assert abs(d - fd) < 1e-6


def test_turning_points_simple_real():
    tps = turning_points(Poly([-1, 0, 1]))
    assert [t.z for t in tps] == [-1, 1]
    assert all(t.multiplicity == 1 and t.is_real for t in tps)


def test_turning_points_two_wells():
    tps = turning_points(Poly.from_roots([-2, -1, 1, 2]))
    assert [t.z for t in tps] == [-2, -1, 1, 2]


def test_turning_points_complex_pair():
    # (z^2-1)(z^2+1) = z^4 - 1
    tps = turning_points(Poly([-1, 0, 0, 0, 1]))
    zs = sorted((t.z for t in tps), key=lambda z: (z.real, z.imag))
    assert zs == [-1, -1j, 1j, 1]
    # conjugation closure is exact
    zset = {t.z for t in tps}
    assert {z.conjugate() for z in zset} == zset


def test_assert_simple_passes_and_raises():
    assert_simple(turning_points(Poly([-1, 0, 1])))
    with pytest.raises(MultipleTurningPoint):
        assert_simple(turning_points(Poly([0, 0, 1])))  # z^2
    with pytest.raises(MultipleTurningPoint):
        # (z-1)^2 (z+1)
        assert_simple(turning_points(Poly.from_roots([1, 1, -1]), ))


def test_roots_reconstruct_coefficients():
    roots = [-2.5, -0.75, 1.25, 3.0, 0.5 + 2j, 0.5 - 2j]
    p = Poly.from_roots(roots, leading=2.0)
    tps = turning_points(p)
    rec = Poly.from_roots([t.z for t in tps for _ in range(t.multiplicity)], leading=p.coeffs[-1])
    for c0, c1 in zip(p.coeffs, rec.coeffs):
        assert abs(c0 - c1) <= 1e-9 * max(1.0, abs(c0))


def test_turning_points_deterministic():
    p = Poly.from_roots([-2, -1, 1, 3])
    a = turning_points(p)
    b = turning_points(p)
    assert [t.z for t in a] == [t.z for t in b]


def test_classified_real_segments():
    q = Poly.from_roots([-2, -1, 1, 2])
    segs = classified_real_segments(q, turning_points(q))
    assert segs == [(-2, -1, "stokes"), (-1, 1, "anti_stokes"), (1, 2, "stokes")]


def test_real_even_well_flag():
    assert Poly([-1, 0, 1]).is_real_even_well()
    assert not Poly([-1, 0, -1]).is_real_even_well()
    assert not Poly([0, 1]).is_real_even_well()
    assert Poly([-1, 0, 0, 0, 1]).is_even


def test_rejects_constant():
    with pytest.raises(ValueError):
        Poly([3.0])
