import cmath
import math
import random

from stokeslab.wkbmat import (
    DoubleWellData,
    double_well_b,
    double_well_b_product,
    gamma_factors,
    leading_roots,
    mat_mul,
    mat_vec,
    omega_anti,
    omega_finite,
    omega_rotation,
)

# frozen quadrature oracles for q = (x^2-1)(x^2-4)
ALPHA_2WELL = 1.16149922856200743542697633343
XI_2WELL = 3.04007997634579686491382048208


def _det(m):
    (a, b), (c, d) = m
    return a * d - b * c


def test_omega_finite_values():
    m = omega_finite(1.0, 1e-30)  # lam*alpha ~ 0
    assert abs(m[0][1] - 1) < 1e-12 and abs(m[1][0] - 1) < 1e-12
    m = omega_finite(1.0, math.pi / 2)
    assert abs(m[0][1] - (-1j)) < 1e-12 and abs(m[1][0] - 1j) < 1e-12


def test_omega_finite_determinant():
    for phi in (0.0, 0.7, -1.3):
        m = omega_finite(2.37, 1.1, phi)
        assert abs(_det(m) + cmath.exp(2j * phi)) < 1e-12


def test_omega_anti_values():
    m = omega_anti(3.0, 0.0)
    assert abs(m[0][0] - 1) < 1e-12 and abs(m[1][1] - 1) < 1e-12
    m = omega_anti(1.0, 1.0)
    assert abs(m[0][0] - math.exp(-1)) < 1e-12
    assert abs(m[1][1] - math.exp(1)) < 1e-12
    assert abs(_det(omega_anti(2.0, 0.5, 0.3)) - cmath.exp(0.6j)) < 1e-12


def test_omega_rotation_leading_order():
    m = omega_rotation()
    pref = math.exp(-math.pi / 6)
    assert abs(m[0][1] - pref) < 1e-15       # alpha^{-1} = 1 at leading order
    assert abs(m[1][1] - pref * 1j) < 1e-15  # |alpha_{1,2}| = 1
    assert _det(m) != 0
    # alpha_12 alpha_23 alpha_31 = 1 trivially at leading order
    assert 1.0 * 1.0 * 1.0 == 1.0


def test_product_matches_closed_form_on_deterministic_samples():
    rng = random.Random(20240815)
    worst = 0.0
    for _ in range(100):
        lam = rng.uniform(0.5, 12.0)
        d = DoubleWellData(
            alpha1=rng.uniform(0.4, 2.5),
            alpha2=rng.uniform(0.4, 2.5),
            xi=rng.uniform(0.2, 2.0),
        )
        b1 = double_well_b(lam, d)
        b2 = double_well_b_product(lam, d)
        worst = max(worst, abs(b1 - b2) / max(abs(b1), 1e-30))
    assert worst < 1e-12


def test_product_associativity():
    lam, d = 3.7, DoubleWellData(1.1, 0.9, 0.8)
    rot = omega_rotation(include_prefactor=False)
    f1 = omega_finite(lam, d.alpha1)
    f2 = omega_finite(lam, d.alpha2)
    a = omega_anti(lam, d.xi)
    seq = mat_mul(mat_mul(mat_mul(mat_mul(mat_mul(mat_mul(rot, f1), rot), a), rot), f2), rot)
    grouped = mat_mul(mat_mul(rot, f1), mat_mul(mat_mul(rot, a), mat_mul(rot, mat_mul(f2, rot))))
    for i in range(2):
        for j in range(2):
            assert abs(seq[i][j] - grouped[i][j]) <= 1e-13 * max(1.0, abs(seq[i][j]))


def test_symmetric_gamma_identity():
    d = DoubleWellData(1.3, 1.3, 0.9)
    for lam in (0.7, 2.2, 5.9):
        g1, g2 = gamma_factors(lam, d)
        assert g1 == g2


def test_symmetric_eigencondition_equivalence():
    # b = 0 iff 4 cos^2(alpha lam) = e^(-2 lam xi) iff 2|cos| = e^(-lam xi)
    d = DoubleWellData(ALPHA_2WELL, ALPHA_2WELL, XI_2WELL)
    roots = leading_roots(d, (0.5, 3.0))
    assert roots, "expected at least one pair in range"
    for r in roots:
        for lam in (r.lam_lo, r.lam_hi):
            assert abs(2 * abs(math.cos(d.alpha1 * lam)) - math.exp(-lam * d.xi)) < 1e-9


def test_leading_roots_split_pairs():
    d = DoubleWellData(ALPHA_2WELL, ALPHA_2WELL, XI_2WELL)
    roots = leading_roots(d, (0.5, 14.0))
    assert len(roots) == 5
    for k, r in enumerate(roots):
        assert r.n == k
        center = (2 * k + 1) * math.pi / (2 * d.alpha1)
        assert abs(r.lam_center - center) < 2e-2 * center
        predicted = math.exp(-center * d.xi) / d.alpha1
        assert 0.5 < r.splitting / predicted < 2.0
        # the float endpoints may collapse once the splitting is sub-ulp,
        # but the high-precision splitting stays positive
        assert r.lam_lo <= r.lam_hi
        assert r.splitting > 0


def test_leading_roots_tiny_splitting_resolved():
    # pair 4 sits near lam ~ 12.2 where e^(-lam xi) ~ 1e-17, below float ulp;
    # the mpmath bisection must still resolve a positive splitting
    d = DoubleWellData(ALPHA_2WELL, ALPHA_2WELL, XI_2WELL)
    r = leading_roots(d, (11.0, 14.0))[0]
    assert r.splitting > 0
    assert r.splitting < 1e-14
    predicted = math.exp(-r.lam_center * d.xi) / d.alpha1
    assert 0.5 < r.splitting / predicted < 2.0


def test_xi_to_infinity_limit():
    # huge barrier: roots collapse onto the two quantization sequences
    d = DoubleWellData(1.0, 1.0, 40.0)
    roots = leading_roots(d, (1.0, 8.0))
    for r in roots:
        assert abs(r.lam_center - (2 * r.n + 1) * math.pi / 2.0) < 1e-12
        assert r.splitting < 1e-15


def test_nonsymmetric_families_no_coincidence():
    d = DoubleWellData(1.0, math.sqrt(2.0), 1.5)
    roots = leading_roots(d, (0.5, 20.0))
    fams = {r.family for r in roots}
    assert fams == {1, 2}
    centers = sorted(r.lam_center for r in roots)
    for a, b in zip(centers[:-1], centers[1:]):
        assert b - a > 1e-6  # irrational ratio: no exactly coincident roots


def test_leading_roots_interlace():
    d = DoubleWellData(1.0, 1.7, 2.0)
    roots = leading_roots(d, (0.5, 15.0))
    fam1 = [r.lam_center for r in roots if r.family == 1]
    # between consecutive family-1 roots at (2n+1)pi/2alpha1 spacing pi/alpha1,
    # family 2 contributes at most ceil(alpha2/alpha1) extras
    fam2 = [r.lam_center for r in roots if r.family == 2]
    for a, b in zip(fam1[:-1], fam1[1:]):
        extras = [x for x in fam2 if a < x < b]
        assert len(extras) <= math.ceil(d.alpha2 / d.alpha1) + 1
