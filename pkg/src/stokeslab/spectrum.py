"""Discrete spectrum of y'' = lam^2 q(x) y in L2(R) by renormalized shooting.

Solutions span e^(+-lam S), so the integrator renormalizes the state every
accepted step and tracks the exponent in log_scale.  For even q the even and
odd spectra are located separately by shooting from the forbidden region to
x = 0; this keeps every root simple and well conditioned even when the
double-well pairs are split by e^(-lam xi).  Splittings below double
precision are resolved by a Taylor-series shooting that runs in mpmath
(see pair_splittings_mp); the series coefficients of y about each step
point follow from the ODE recurrence, so steps of size ~ several
oscillation lengths are exact to the working precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import mpmath

from .action import well_action
from .errors import CutoffTooSmall, MissedEigenvalueWarning, NoBracket, StiffnessFailure
from .poly import Poly, real_turning_points, turning_points

__all__ = [
    "ShootConfig",
    "EigenRecord",
    "Anchor",
    "shoot_miss",
    "eigenvalues",
    "wkb_sequence",
    "wkb_count",
    "calibrate_ratio",
    "eigenfunction_anchor",
    "refine_eigenvalue_mp",
    "pair_splittings_mp",
]

_DP_A2 = 0.2
_DP_A3 = (3.0 / 40.0, 9.0 / 40.0)
_DP_A4 = (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0)
_DP_A5 = (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0)
_DP_A6 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0)
_DP_B = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0)
_DP_E = (35.0 / 384.0 - 5179.0 / 57600.0, 0.0, 500.0 / 1113.0 - 7571.0 / 16695.0,
         125.0 / 192.0 - 393.0 / 640.0, -2187.0 / 6784.0 + 92097.0 / 339200.0,
         11.0 / 84.0 - 187.0 / 2100.0, -1.0 / 40.0)


@dataclass
class ShootConfig:
    rtol: float = 1e-11
    cutoff_factor: float = 1.5
    cutoff_pad: float = 5.0          # X = factor*max|tp| + pad/lam^(2/3)
    cutoff: float | None = None      # explicit X override
    match: float | None = None       # match point override
    lam_min: float = 0.1
    w_tol: float = 1e-9              # |w| at an accepted eigenvalue
    lam_rel_tol: float = 1e-10       # bracket width target (relative)
    max_steps: int = 2_000_000


@dataclass(frozen=True)
class EigenRecord:
    n: int
    lam: float
    miss_residual: float
    bracket: tuple
    well_tag: int | None = None
    well_tag_tied: bool = False
    parity: str | None = None


@dataclass(frozen=True)
class Anchor:
    """Renormalized eigenfunction data (y, dy, log_scale) at a real point."""

    x: float
    y: complex
    dy: complex
    log_scale: float
    parity: str | None = None


def _cutoff(p: Poly, lam: float, cfg: ShootConfig) -> float:
    if cfg.cutoff is not None:
        X = cfg.cutoff
    else:
        xs = real_turning_points(turning_points(p))
        xmax = max(abs(x) for x in xs) if xs else 1.0
        X = cfg.cutoff_factor * xmax + cfg.cutoff_pad / lam ** (2.0 / 3.0)
    for s in (X, -X):
        if p(complex(s, 0.0)).real <= 0:
            raise CutoffTooSmall(f"q({s:.4g}) <= 0; enlarge the cutoff")
    return X


def _match_point(p: Poly, cfg: ShootConfig) -> float:
    if cfg.match is not None:
        return cfg.match
    xs = real_turning_points(turning_points(p))
    if len(xs) >= 4:
        # barrier center between the two inner wells
        mid = len(xs) // 2
        return 0.5 * (xs[mid - 1] + xs[mid])
    if len(xs) >= 2:
        return 0.5 * (xs[0] + xs[-1])
    return 0.0


def _integrate_real(coeffs, lam: float, x0: float, x1: float, y: float, dy: float,
                    rtol: float, max_steps: int):
    """Renormalized Dormand-Prince march of y'' = lam^2 q(x) y from x0 to x1
    with real data; returns (y, dy, log_scale)."""
    rc = tuple(reversed([c.real for c in coeffs]))
    lam2 = lam * lam

    def f(x, u, v):
        qv = 0.0
        for c in rc:
            qv = qv * x + c
        return v, lam2 * qv * u

    span = x1 - x0
    if span == 0.0:
        return y, dy, 0.0
    sgn = 1.0 if span > 0 else -1.0
    # initial step from the local oscillation/decay rate
    q0 = 0.0
    for c in rc:
        q0 = q0 * x0 + c
    rate = lam * math.sqrt(abs(q0)) + 1.0
    h = sgn * min(abs(span), 0.1 / rate)
    x = x0
    log_scale = 0.0
    steps = 0
    while (x1 - x) * sgn > 1e-14 * abs(span):
        steps += 1
        if steps > max_steps:
            raise StiffnessFailure("renormalized shooting exceeded its step budget")
        if abs(h) < 1e-15 * abs(span):
            raise StiffnessFailure(f"step underflow at x={x:.6g}")
        if (x + h - x1) * sgn > 0:
            h = x1 - x
        k1u, k1v = f(x, y, dy)
        k2u, k2v = f(x + 0.2 * h, y + h * _DP_A2 * k1u, dy + h * _DP_A2 * k1v)
        k3u, k3v = f(x + 0.3 * h,
                     y + h * (_DP_A3[0] * k1u + _DP_A3[1] * k2u),
                     dy + h * (_DP_A3[0] * k1v + _DP_A3[1] * k2v))
        k4u, k4v = f(x + 0.8 * h,
                     y + h * (_DP_A4[0] * k1u + _DP_A4[1] * k2u + _DP_A4[2] * k3u),
                     dy + h * (_DP_A4[0] * k1v + _DP_A4[1] * k2v + _DP_A4[2] * k3v))
        k5u, k5v = f(x + h * 8.0 / 9.0,
                     y + h * (_DP_A5[0] * k1u + _DP_A5[1] * k2u + _DP_A5[2] * k3u + _DP_A5[3] * k4u),
                     dy + h * (_DP_A5[0] * k1v + _DP_A5[1] * k2v + _DP_A5[2] * k3v + _DP_A5[3] * k4v))
        k6u, k6v = f(x + h,
                     y + h * (_DP_A6[0] * k1u + _DP_A6[1] * k2u + _DP_A6[2] * k3u
                              + _DP_A6[3] * k4u + _DP_A6[4] * k5u),
                     dy + h * (_DP_A6[0] * k1v + _DP_A6[1] * k2v + _DP_A6[2] * k3v
                               + _DP_A6[3] * k4v + _DP_A6[4] * k5v))
        y5 = y + h * (_DP_B[0] * k1u + _DP_B[2] * k3u + _DP_B[3] * k4u
                      + _DP_B[4] * k5u + _DP_B[5] * k6u)
        dy5 = dy + h * (_DP_B[0] * k1v + _DP_B[2] * k3v + _DP_B[3] * k4v
                        + _DP_B[4] * k5v + _DP_B[5] * k6v)
        k7u, k7v = f(x + h, y5, dy5)
        eu = h * (_DP_E[0] * k1u + _DP_E[2] * k3u + _DP_E[3] * k4u
                  + _DP_E[4] * k5u + _DP_E[5] * k6u + _DP_E[6] * k7u)
        ev = h * (_DP_E[0] * k1v + _DP_E[2] * k3v + _DP_E[3] * k4v
                  + _DP_E[4] * k5v + _DP_E[5] * k6v + _DP_E[6] * k7v)
        scale = max(abs(y), abs(dy), abs(y5), abs(dy5), 1e-300)
        err = max(abs(eu), abs(ev)) / (rtol * scale)
        if err > 1.0:
            h *= max(0.2, 0.9 * err ** -0.2)
            continue
        x += h
        y, dy = y5, dy5
        m = max(abs(y), abs(dy))
        if m > 2.0 or m < 0.5:
            y /= m
            dy /= m
            log_scale += math.log(m)
        if err > 0:
            h *= min(5.0, 0.9 * err ** -0.2)
    return y, dy, log_scale


def _wkb_entry_state(p: Poly, lam: float, X: float, side: int):
    """Decaying WKB data at x = side*X: y = q^(-1/4), y'/y = -side*(lam sqrt(q))
    - q'/(4q); normalized to unit magnitude."""
    x = side * X
    qv, dqv = p.eval_with_deriv(complex(x, 0.0))
    qv, dqv = qv.real, dqv.real
    y = qv ** -0.25
    dy = y * (-side * lam * math.sqrt(qv) - dqv / (4.0 * qv))
    m = max(abs(y), abs(dy))
    return y / m, dy / m


def shoot_miss(p: Poly, lam: float, cfg: ShootConfig | None = None) -> float:
    """Normalized Wronskian miss w(lam) of the two-sided shot; w = 0 exactly
    at eigenvalues and its sign changes bracket them."""
    cfg = cfg or ShootConfig()
    if lam <= 0:
        raise ValueError("lam must be positive")
    X = _cutoff(p, lam, cfg)
    xm = _match_point(p, cfg)
    y_r, dy_r = _wkb_entry_state(p, lam, X, +1)
    y_l, dy_l = _wkb_entry_state(p, lam, X, -1)
    yr, dyr, _ = _integrate_real(p.coeffs, lam, X, xm, y_r, dy_r, cfg.rtol, cfg.max_steps)
    yl, dyl, _ = _integrate_real(p.coeffs, lam, -X, xm, y_l, dy_l, cfg.rtol, cfg.max_steps)
    nr = math.hypot(yr, dyr)
    nl = math.hypot(yl, dyl)
    return (yl * dyr - dyl * yr) / (nr * nl)


def _parity_miss(p: Poly, lam: float, parity: str, cfg: ShootConfig) -> float:
    """Even/odd miss for even q: shoot from +X to 0; an even state has
    dy(0) = 0, an odd state y(0) = 0."""
    X = _cutoff(p, lam, cfg)
    y0, dy0 = _wkb_entry_state(p, lam, X, +1)
    y, dy, _ = _integrate_real(p.coeffs, lam, X, 0.0, y0, dy0, cfg.rtol, cfg.max_steps)
    nrm = math.hypot(y, dy)
    return (dy if parity == "even" else y) / nrm


def wkb_sequence(alpha: float, n_range) -> list[float]:
    """Leading-order quantization sequence (2n+1) pi / (2 alpha)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return [(2 * n + 1) * math.pi / (2.0 * alpha) for n in n_range]


def _well_actions(p: Poly) -> list[float]:
    xs = real_turning_points(turning_points(p))
    out = []
    for a, b in zip(xs[:-1], xs[1:]):
        if p(complex(0.5 * (a + b), 0.0)).real < 0:
            out.append(well_action(p, a, b))
    return out


def wkb_count(p: Poly, lam: float) -> int:
    """A-posteriori eigenvalue count below lam from the well quantization
    sequences."""
    total = 0
    for alpha in _well_actions(p):
        total += max(0, int(math.floor((lam * 2.0 * alpha / math.pi - 1.0) / 2.0)) + 1)
    return total


def _refine_root(f, a: float, b: float, fa: float, fb: float,
                 rel_width: float | None = None) -> tuple[float, float, tuple]:
    """Bracketed secant/bisection hybrid.  By default it polishes on toward
    machine width: the extra iterations are cheap and downstream zero
    searches want the eigenvalue as exact as the integrator allows."""
    assert fa * fb <= 0
    target = max((rel_width or 32.0 * 2.2e-16) * max(abs(a), abs(b)), 1e-15)
    stall = 0
    while b - a > target:
        if fb != fa:
            c = b - fb * (b - a) / (fb - fa)
        else:
            c = 0.5 * (a + b)
        lo = a + 0.05 * (b - a)
        hi = b - 0.05 * (b - a)
        if not lo <= c <= hi or stall >= 2:
            c = 0.5 * (a + b)
            stall = 0
        width0 = b - a
        fc = f(c)
        if fc == 0.0:
            a = b = c
            fa = fb = 0.0
            break
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
        else:
            b, fb = c, fc
        stall = stall + 1 if (b - a) > 0.5 * width0 else 0
    root = 0.5 * (a + b)
    return root, min(abs(fa), abs(fb)), (a, b)


def eigenvalues(p: Poly, lam_max: float, cfg: ShootConfig | None = None) -> list[EigenRecord]:
    """All eigenvalues in (0, lam_max], indexed in increasing order.

    The scan grid step pi / (2 sum alpha_i) guarantees consecutive
    eigenvalues are separated; even q is split into even/odd spectra so that
    near-degenerate double-well pairs stay simple roots.  A WKB count
    mismatch >= 2 is reported via MissedEigenvalueWarning, never fixed up.
    """
    cfg = cfg or ShootConfig()
    alphas = _well_actions(p)
    if not alphas:
        raise ValueError("potential has no classically allowed interval")
    grid = math.pi / (2.0 * sum(alphas))
    parity_mode = p.is_real and p.is_even

    found: list[tuple[float, float, tuple, str | None]] = []
    branches = (("even", "odd") if parity_mode else (None,))
    for parity in branches:
        if parity is None:
            f = lambda lam: shoot_miss(p, lam, cfg)
        else:
            f = lambda lam, _par=parity: _parity_miss(p, lam, _par, cfg)
        lam = cfg.lam_min
        f_prev, lam_prev = f(lam), lam
        while lam < lam_max:
            lam = min(lam + grid, lam_max)
            f_cur = f(lam)
            if f_prev == 0.0:
                found.append((lam_prev, 0.0, (lam_prev, lam_prev), parity))
            elif f_prev * f_cur < 0:
                root, resid, bracket = _refine_root(f, lam_prev, lam, f_prev, f_cur)
                found.append((root, resid, bracket, parity))
            lam_prev, f_prev = lam, f_cur
            if lam >= lam_max:
                break

    found.sort(key=lambda t: t[0])
    seqs = [wkb_sequence(a, range(0, int(lam_max * max(alphas)) + 8)) for a in alphas]
    records = []
    for n, (lam, resid, bracket, parity) in enumerate(found):
        tag = None
        tied = False
        if len(seqs) >= 2:
            dists = [min(abs(lam - s) for s in seq) for seq in seqs]
            order = sorted(range(len(dists)), key=lambda i: dists[i])
            tag = order[0] + 1
            tied = len(dists) > 1 and abs(dists[order[0]] - dists[order[1]]) < 0.05 * grid
        elif len(seqs) == 1:
            tag = 1
        records.append(EigenRecord(n=n, lam=lam, miss_residual=resid, bracket=bracket,
                                   well_tag=tag, well_tag_tied=tied, parity=parity))

    expected = wkb_count(p, lam_max)
    if abs(len(records) - expected) >= 2:
        warnings.warn(
            f"found {len(records)} eigenvalues but WKB predicts ~{expected}",
            MissedEigenvalueWarning,
        )
    return records


def eigenfunction_anchor(p: Poly, lam: float, cfg: ShootConfig | None = None) -> Anchor:
    """Initial data for analytic continuation of the eigenfunction at lam.

    For even q the anchor is exact parity data at x = 0 ((1, 0) for an even
    state, (0, 1) for an odd one), chosen by whichever parity miss is
    smaller.  Otherwise it is the renormalized left-shot state at the match
    point.
    """
    cfg = cfg or ShootConfig()
    if p.is_real and p.is_even:
        me = abs(_parity_miss(p, lam, "even", cfg))
        mo = abs(_parity_miss(p, lam, "odd", cfg))
        if me <= mo:
            return Anchor(x=0.0, y=1.0 + 0j, dy=0j, log_scale=0.0, parity="even")
        return Anchor(x=0.0, y=0j, dy=1.0 + 0j, log_scale=0.0, parity="odd")
    X = _cutoff(p, lam, cfg)
    xm = _match_point(p, cfg)
    y0, dy0 = _wkb_entry_state(p, lam, X, -1)
    y, dy, ls = _integrate_real(p.coeffs, lam, -X, xm, y0, dy0, cfg.rtol, cfg.max_steps)
    return Anchor(x=xm, y=complex(y), dy=complex(dy), log_scale=ls, parity=None)


def calibrate_ratio(a0: float, a1: float, a2: float, rho: float,
                    a3_range: tuple[float, float] | None = None,
                    tol: float = 1e-10) -> tuple[tuple, float]:
    """Tune the free root a3 of q = (z-a0)(z-a1)(z-a2)(z-a3) so that
    well_action(a0,a1) / well_action(a2,a3) hits the target ratio.

    Returns ((a0, a1, a2, a3), achieved_ratio).  The ratio decreases
    monotonically in a3 on the physical range, so a bracket plus
    secant/bisection converges fast; NoBracket if the target is unreachable.
    """
    if rho <= 0:
        raise ValueError("target ratio must be positive")
    if not a0 < a1 < a2:
        raise ValueError("need a0 < a1 < a2")
    lo, hi = a3_range if a3_range is not None else (a2 + 0.05 * (a2 - a0), a2 + 50.0 * (a2 - a0))

    def ratio(a3: float) -> float:
        q = Poly.from_roots([a0, a1, a2, a3])
        return well_action(q, a0, a1) / well_action(q, a2, a3)

    f_lo = ratio(lo) - rho
    f_hi = ratio(hi) - rho
    if f_lo * f_hi > 0:
        raise NoBracket(f"ratio {rho} not reachable for a3 in ({lo}, {hi})")
    a, b, fa, fb = lo, hi, f_lo, f_hi
    while b - a > tol * max(1.0, abs(b)):
        c = b - fb * (b - a) / (fb - fa) if fb != fa else 0.5 * (a + b)
        if not a + 0.1 * tol < c < b - 0.1 * tol:
            c = 0.5 * (a + b)
        fc = ratio(c) - rho
        if fc == 0.0:
            a = b = c
            break
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
        else:
            b, fb = c, fc
    a3 = 0.5 * (a + b)
    return (a0, a1, a2, a3), ratio(a3)


# ---------------------------------------------------------------------------
# high-precision Taylor-series shooting (mpmath)
# ---------------------------------------------------------------------------

def _shift_coeffs_mp(coeffs, x0):
    """Taylor coefficients of q about x0 (classic in-place Horner shift)."""
    a = list(coeffs)
    m = len(a) - 1
    for i in range(m):
        for k in range(m - 1, i - 1, -1):
            a[k] += x0 * a[k + 1]
    return a


def _taylor_march_mp(coeffs_mp, lam, x0, x1, y, dy, prec_digits: int):
    """March y'' = lam^2 q y from x0 to x1 with per-step Taylor series whose
    coefficients come from the ODE recurrence; renormalized each step."""
    lam2 = lam * lam
    x = x0
    sgn = 1 if x1 >= x0 else -1
    log_scale = mpmath.mpf(0)
    tiny = mpmath.mpf(10) ** (-(prec_digits + 8))
    d = len(coeffs_mp) - 1
    while (x1 - x) * sgn > 0:
        qloc = _shift_coeffs_mp(coeffs_mp, x)
        rate = lam * mpmath.sqrt(abs(qloc[0])) + 1
        # keep h an mpf: its powers h^k must carry the working precision
        h = sgn * min(abs(x1 - x), mpmath.mpf(6.0 / float(rate)))
        c = [y, dy]
        # series evaluation at h with the recurrence
        # c_{k+2} = lam^2 sum_j q_j c_{k-j} / ((k+1)(k+2))
        yk = y + dy * h
        dyk = dy
        hk = h * h   # h^(k) for the c_k term being added, starting k=2
        k = 0
        small = 0
        max_term = max(abs(y), abs(dy), tiny)
        while small < 4 and k < 600:
            s = mpmath.mpf(0)
            for j in range(0, min(k, d) + 1):
                s += qloc[j] * c[k - j]
            ck2 = lam2 * s / ((k + 1) * (k + 2))
            c.append(ck2)
            term = ck2 * hk  # hk == h^(k+2) here
            yk += term
            dyk += (k + 2) * ck2 * hk / h
            mt = abs(term)
            max_term = max(max_term, mt)
            small = small + 1 if mt < tiny * max_term else 0
            hk *= h
            k += 1
        x += h
        y, dy = yk, dyk
        m = max(abs(y), abs(dy))
        if m > 2 or m < 0.5:
            y /= m
            dy /= m
            log_scale += mpmath.log(m)
    return y, dy, log_scale


def _parity_miss_mp(coeffs_mp, lam, X, parity: str, prec_digits: int):
    # decaying WKB data at +X, as in the float path but in mpmath
    qv = mpmath.mpf(0)
    dqv = mpmath.mpf(0)
    for c in reversed(coeffs_mp):
        dqv = dqv * X + qv
        qv = qv * X + c
    y = qv ** mpmath.mpf("-0.25")
    dy = y * (-lam * mpmath.sqrt(qv) - dqv / (4 * qv))
    m = max(abs(y), abs(dy))
    y, dy, _ = _taylor_march_mp(coeffs_mp, lam, mpmath.mpf(X), mpmath.mpf(0),
                                y / m, dy / m, prec_digits)
    nrm = mpmath.sqrt(y * y + dy * dy)
    return (dy if parity == "even" else y) / nrm


def refine_eigenvalue_mp(p: Poly, lam: float, parity: str | None = None,
                         dps: int = 40, cfg: ShootConfig | None = None,
                         half_width: float = 1e-4):
    """Polish one eigenvalue of an even real q in mpmath; returns an mpf
    correct to ~dps-6 digits, starting from a float eigenvalue.

    The normalized parity miss saturates at O(1) outside a transition zone
    as narrow as the tunneling splitting, where a secant step is useless, so
    the bracket is bisected while both endpoint values are saturated and the
    secant only takes over inside the linear zone.
    """
    cfg = cfg or ShootConfig()
    if not (p.is_real and p.is_even):
        raise ValueError("mp refinement is implemented for even real q")
    if parity is None:
        me = abs(_parity_miss(p, lam, "even", cfg))
        mo = abs(_parity_miss(p, lam, "odd", cfg))
        parity = "even" if me <= mo else "odd"
    X = _cutoff(p, lam, cfg)
    with mpmath.workdps(dps + 10):
        coeffs_mp = [mpmath.mpf(c.real) for c in p.coeffs]
        f = lambda l: _parity_miss_mp(coeffs_mp, l, X, parity, dps)
        a = mpmath.mpf(lam) - half_width
        b = mpmath.mpf(lam) + half_width
        fa, fb = f(a), f(b)
        widen = 0
        while (fa > 0) == (fb > 0):
            a, b = a - (b - a), b + (b - a)
            fa, fb = f(a), f(b)
            widen += 1
            if widen > 6:
                raise NoBracket(f"no sign change of the {parity} miss near {lam}")
        target = mpmath.mpf(10) ** (-(dps - 6)) * abs(b)
        stall = 0
        for _ in range(80 + int(4 * dps)):
            if b - a <= target:
                break
            width0 = b - a
            saturated = min(abs(fa), abs(fb)) > mpmath.mpf("0.3")
            if saturated or stall >= 2 or fb == fa:
                c = (a + b) / 2
                stall = 0
            else:
                c = b - fb * (b - a) / (fb - fa)
                if not (a < c < b):
                    c = (a + b) / 2
            fc = f(c)
            if fc == 0:
                return c
            if (fc > 0) == (fa > 0):
                a, fa = c, fc
            else:
                b, fb = c, fc
            stall = stall + 1 if (b - a) > width0 / 2 else 0
        return (a + b) / 2


def _float_parity_root_near(p: Poly, guess: float, parity: str,
                            cfg: ShootConfig, half_window: float) -> float:
    """Nearest root of the float parity miss around a quantization guess,
    located only roughly (1e-6 relative): it seeds an mp secant polish."""
    f = lambda lam: _parity_miss(p, lam, parity, cfg)
    step = half_window / 6.0
    lam_prev = max(guess - half_window, 0.05)
    f_prev = f(lam_prev)
    lam = lam_prev
    while lam < guess + half_window:
        lam = lam + step
        f_cur = f(lam)
        if f_prev * f_cur <= 0:
            root, _, _ = _refine_root(f, lam - step, lam, f_prev, f_cur, rel_width=1e-6)
            return root
        f_prev = f_cur
    raise NoBracket(f"no {parity} eigenvalue within {half_window} of {guess}")


def pair_splittings_mp(p: Poly, n_pairs: int, dps: int = 40,
                       cfg: ShootConfig | None = None) -> list[dict]:
    """Tunneling splittings lam_odd - lam_even for the first n_pairs pairs of
    an even double well, resolved far below double precision by the Taylor
    shooting.  Each pair member is first located in float arithmetic and
    then polished in mpmath at a precision chosen from lam * xi."""
    cfg = cfg or ShootConfig()
    alphas = _well_actions(p)
    if len(alphas) != 2 or abs(alphas[0] - alphas[1]) > 1e-9:
        raise ValueError("pair splittings need a symmetric double well")
    alpha = alphas[0]
    xs = real_turning_points(turning_points(p))
    from .action import barrier_action
    xi = barrier_action(p, xs[1], xs[2])
    out = []
    for n, lam_c in enumerate(wkb_sequence(alpha, range(n_pairs))):
        digits = max(dps, int(lam_c * xi * 0.4343) + 30)
        half_window = 0.35 * math.pi / alpha
        le_f = _float_parity_root_near(p, lam_c, "even", cfg, half_window)
        lo_f = _float_parity_root_near(p, lam_c, "odd", cfg, half_window)
        le = refine_eigenvalue_mp(p, le_f, "even", digits, cfg)
        lo = refine_eigenvalue_mp(p, lo_f, "odd", digits, cfg)
        with mpmath.workdps(digits + 10):
            split = lo - le
            out.append({
                "n": n,
                "lam_even": float(le),
                "lam_odd": float(lo),
                "lam_center": float((le + lo) / 2),
                "splitting": float(split),
            })
    return out
