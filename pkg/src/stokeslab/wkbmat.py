"""Leading-order transition-matrix algebra for WKB connection problems.

Three elementary 2x2 transitions generate everything here: crossing a finite
Stokes line between two turning points, moving along an anti-Stokes line,
and rotating between canonical domains around one turning point.  All
subleading 1 + O(1/lam) factors are frozen at 1, so every output of this
module is leading-order only.  The decisive quantity for a double well is
the entry b(lam) whose zeros give the eigenvalue condition; it is assembled
both in closed form and as the ordered seven-factor matrix product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath

__all__ = [
    "Mat2",
    "DoubleWellData",
    "PairRoot",
    "omega_finite",
    "omega_anti",
    "omega_rotation",
    "mat_mul",
    "mat_vec",
    "double_well_b",
    "double_well_b_product",
    "leading_roots",
]

Mat2 = tuple  # ((a, b), (c, d)) of complex entries


def mat_mul(m1: Mat2, m2: Mat2) -> Mat2:
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_vec(m: Mat2, v: tuple) -> tuple:
    (a, b), (c, d) = m
    x, y = v
    return (a * x + b * y, c * x + d * y)


def omega_finite(lam: float, alpha: float, phi: float = 0.0) -> Mat2:
    """Transition along a finite Stokes line of action alpha = |S(z1, z2)|."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    ph = cmath.exp(1j * phi)
    return ((0.0, ph * cmath.exp(-1j * lam * alpha)),
            (ph * cmath.exp(1j * lam * alpha), 0.0))


def omega_anti(lam: float, a: float, phi: float = 0.0) -> Mat2:
    """Transition along an anti-Stokes line of action a = |S(z1, z2)|."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    ph = cmath.exp(1j * phi)
    return ((ph * math.exp(-lam * a), 0.0), (0.0, ph * math.exp(lam * a)))


def omega_rotation(alpha_a: complex = 1.0, alpha_b: complex = 1.0,
                   include_prefactor: bool = True) -> Mat2:
    """Rotation between adjacent canonical domains around one turning point,
    [[0, 1/alpha_a], [1, i*alpha_b]], with the printed exp(-pi/6) prefactor.

    The prefactor is reproduced as printed in the source formula; it cancels
    in every modulus-level conclusion, and the seven-factor product below is
    assembled without it.
    """
    pref = math.exp(-math.pi / 6.0) if include_prefactor else 1.0
    return ((0.0, pref / alpha_a), (pref, pref * 1j * alpha_b))


@dataclass(frozen=True)
class DoubleWellData:
    """Well actions alpha1, alpha2 and barrier action xi, all positive."""

    alpha1: float
    alpha2: float
    xi: float

    def __post_init__(self):
        if min(self.alpha1, self.alpha2, self.xi) <= 0:
            raise ValueError("actions must be positive")

    @property
    def symmetric(self) -> bool:
        return abs(self.alpha1 - self.alpha2) <= 1e-12 * max(self.alpha1, self.alpha2)


def gamma_factors(lam: float, d: DoubleWellData) -> tuple[complex, complex]:
    """Leading order Gamma_l(lam) = 2 cos(alpha_l lam)."""
    return 2.0 * math.cos(d.alpha1 * lam), 2.0 * math.cos(d.alpha2 * lam)


def double_well_b(lam: float, d: DoubleWellData) -> complex:
    """Closed-form leading-order b(lam) for a double well:
    exp(i lam (a2 - a1)) exp(-lam xi) - Gamma1 Gamma2 exp(lam xi)."""
    g1, g2 = gamma_factors(lam, d)
    return (cmath.exp(1j * lam * (d.alpha2 - d.alpha1)) * math.exp(-lam * d.xi)
            - g1 * g2 * math.exp(lam * d.xi))


def double_well_b_product(lam: float, d: DoubleWellData) -> complex:
    """b(lam) assembled as the ordered product of the seven elementary
    matrices applied to (0, 1); must agree with double_well_b to rounding."""
    rot = omega_rotation(include_prefactor=False)
    m = rot
    m = mat_mul(m, omega_finite(lam, d.alpha1))
    m = mat_mul(m, rot)
    m = mat_mul(m, omega_anti(lam, d.xi))
    m = mat_mul(m, rot)
    m = mat_mul(m, omega_finite(lam, d.alpha2))
    m = mat_mul(m, rot)
    _, b = mat_vec(m, (0.0, 1.0))
    return b


@dataclass(frozen=True)
class PairRoot:
    """A split pair of roots of |Gamma1 Gamma2| = exp(-2 lam xi) around one
    quantization point (2n+1) pi / (2 alpha)."""

    family: int          # 1 or 2; 1 covers both for a symmetric well
    n: int
    lam_center: float
    lam_lo: float
    lam_hi: float
    splitting: float     # lam_hi - lam_lo, evaluated in high precision


def _pair_digits(lam: float, xi: float) -> int:
    return max(25, int(2.0 * lam * xi / math.log(10.0)) + 25)


def leading_roots(d: DoubleWellData, lam_range: tuple[float, float]) -> list[PairRoot]:
    """Roots of the modulus condition |Gamma1(lam) Gamma2(lam)| = e^(-2 lam xi),
    located by bracketed bisection around each quantization point.

    The two roots of a pair straddle the quantization point at a distance
    ~ e^(-lam xi) / (2 alpha), far below double precision once lam xi is
    large, so the bisection runs in mpmath at a precision chosen from
    lam * xi.  For a symmetric well (alpha1 == alpha2) only family 1 is
    emitted, since the families coincide.
    """
    lo, hi = lam_range
    if not 0 < lo < hi:
        raise ValueError("lam_range must be positive and increasing")
    families = [(1, d.alpha1)] if d.symmetric else [(1, d.alpha1), (2, d.alpha2)]
    out: list[PairRoot] = []
    for fam, alpha in families:
        n = max(0, int(math.floor((lo * 2.0 * alpha / math.pi - 1.0) / 2.0)))
        while True:
            center = (2 * n + 1) * math.pi / (2.0 * alpha)
            if center > hi:
                break
            if center >= lo:
                out.append(_solve_pair(d, fam, n, center))
            n += 1
    out.sort(key=lambda r: (r.lam_center, r.family))
    return out


def _solve_pair(d: DoubleWellData, fam: int, n: int, center: float) -> PairRoot:
    digits = _pair_digits(center, d.xi)
    with mpmath.workdps(digits):
        a1 = mpmath.mpf(d.alpha1)
        a2 = mpmath.mpf(d.alpha2)
        xi = mpmath.mpf(d.xi)
        alpha = a1 if fam == 1 else a2

        def f(lam):
            return (abs(4 * mpmath.cos(a1 * lam) * mpmath.cos(a2 * lam))
                    - mpmath.e ** (-2 * lam * xi))

        c = mpmath.mpf(2 * n + 1) * mpmath.pi / (2 * alpha)
        w = mpmath.pi / (4 * alpha)
        # shrink the bracket until the endpoints are on the positive side
        while f(c - w) <= 0 or f(c + w) <= 0:
            w = w / 2
            if w < mpmath.mpf(10) ** (-digits + 5):
                raise ValueError("could not bracket the pair roots")
        lo_root = _bisect_mp(f, c - w, c, digits)
        hi_root = _bisect_mp(lambda x: f(x), c, c + w, digits, rising=True)
        split = hi_root - lo_root
        return PairRoot(
            family=fam,
            n=n,
            lam_center=float((lo_root + hi_root) / 2),
            lam_lo=float(lo_root),
            lam_hi=float(hi_root),
            splitting=float(split),
        )


def _bisect_mp(f, a, b, digits: int, rising: bool = False):
    """Bisection for a sign change between a (f>0 side) and b (f<0 side),
    or the reverse when rising."""
    fa = f(a)
    fb = f(b)
    if rising:
        a, b, fa, fb = b, a, fb, fa  # now f(a) > 0 > f(b)
    if fa <= 0 or fb >= 0:
        raise ValueError("bisection bracket lost")
    for _ in range(20 + int(3.4 * digits)):
        m = (a + b) / 2
        if f(m) > 0:
            a = m
        else:
            b = m
    return (a + b) / 2
