"""Branch-tracked evaluation of sqrt(q) along paths and the complex action
S(z0, z) = int sqrt(q(t)) dt.

No global branch cuts are ever defined: every path carries a branch seed and
sqrt(q) is continued sample-to-sample (nearest of the two square roots).
Quadrature is an adaptive Gauss-Kronrod 7/15 pair applied left-to-right so
the branch reference travels with the integration; segments that start or
end at a turning point are reparametrized to remove the |t - a|^(1/2)
endpoint singularity.  A nonzero branch seed on a path that starts at a
turning point (where sqrt(q) = 0 exactly) orients the branch of the first
interior samples instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import BranchJump, QuadratureFailure, SignError
from .poly import Poly, TurningPoint

__all__ = [
    "PathC",
    "ActionValue",
    "sqrt_q_along",
    "action",
    "action_between",
    "well_action",
    "barrier_action",
    "agmon_mass",
    "agmon_cumulative",
    "turning_exclusion_radius",
]

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK values).
_XK = (
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
)
_WK = (
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
)
# Gauss-7 weights sit on the odd Kronrod nodes.
_WG = (
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
)

_MAX_DEPTH = 30


@dataclass(frozen=True)
class PathC:
    """Oriented polyline in C with a branch seed for sqrt(q) at its first node.

    A seed of None means the principal square root at the first interior
    sample.
    """

    points: tuple
    branch_seed: complex | None = None

    def __init__(self, points: Sequence[complex], branch_seed: complex | None = None):
        pts = tuple(complex(z) for z in points)
        if len(pts) < 2:
            raise ValueError("a path needs at least two nodes")
        for a, b in zip(pts[:-1], pts[1:]):
            if a == b:
                raise ValueError("consecutive path nodes must be distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "branch_seed", None if branch_seed is None else complex(branch_seed))

    def reversed(self, branch_end: complex | None = None) -> "PathC":
        return PathC(tuple(reversed(self.points)), branch_end)

    def validate(self, p: Poly, tps: Sequence[TurningPoint], lam: float = 1.0) -> None:
        """Check the turning-point exclusion: interior nodes keep away from
        every turning point; endpoints may coincide with one exactly."""
        for i, z in enumerate(self.points):
            for tp in tps:
                r = turning_exclusion_radius(p, tp, lam)
                d = abs(z - tp.z)
                if d < r and not (i in (0, len(self.points) - 1) and d == 0.0):
                    raise ValueError(
                        f"path node {z} within exclusion radius {r:.3g} of turning point {tp.z}"
                    )


@dataclass(frozen=True)
class ActionValue:
    S: complex
    branch_end: complex
    abs_mass: float


def turning_exclusion_radius(p: Poly, tp: TurningPoint, lam: float = 1.0) -> float:
    """|q'(z0)|^(-1/3) * lam^(-7/12), the shrinking neighborhood inside which
    WKB asymptotics degrade around a simple turning point."""
    _, dq = p.eval_with_deriv(tp.z)
    if dq == 0:
        raise ValueError("exclusion radius needs a simple turning point")
    return abs(dq) ** (-1.0 / 3.0) * lam ** (-7.0 / 12.0)


def _continue_sqrt(qval: complex, w_ref: complex) -> complex:
    """Square root of qval on the sheet closest to w_ref (principal if
    w_ref == 0)."""
    w = cmath.sqrt(qval)
    if w_ref != 0 and (w.conjugate() * w_ref).real < 0:
        w = -w
    return w


def _is_tp(p: Poly, z: complex) -> bool:
    return abs(p(z)) <= 1e-13 * max(p.coeff_scale(z), 1e-300)


class _Panelizer:
    """Left-to-right adaptive GK quadrature of w(t)*jac(t) with w = sqrt(q)
    continued through the ordered samples.  Accumulates the complex integral
    and the |w||dz| mass; returns the branch value at the right edge."""

    def __init__(self, rel_tol: float):
        self.rel_tol = rel_tol
        self.sampler: Callable[[float], tuple[complex, complex]] | None = None
        self.S = 0j
        self.mass = 0.0

    def run(self, t0: float, t1: float, w_ref: complex) -> complex:
        return self._panel(t0, t1, w_ref, 0)

    def _panel(self, t0: float, t1: float, w_ref: complex, depth: int) -> complex:
        h = 0.5 * (t1 - t0)
        mid = 0.5 * (t0 + t1)
        vals = []
        ref = w_ref
        last_nonzero = w_ref
        max_jump = 0.0
        for x in _XK:
            qv, jac = self.sampler(mid + h * x)
            w = _continue_sqrt(qv, ref)
            if ref != 0 and w != 0:
                max_jump = max(max_jump, abs(cmath.phase(w / ref)))
            if w != 0:
                ref = w
                last_nonzero = w
            vals.append(w * jac)

        ik = 0j
        mass = 0.0
        for i in range(15):
            ik += _WK[i] * vals[i]
            mass += _WK[i] * abs(vals[i])
        ig = sum(_WG[j] * vals[2 * j + 1] for j in range(7))
        ik *= h
        ig *= h
        mass *= abs(h)
        err = abs(ik - ig)

        split_for_phase = max_jump > 0.25 * math.pi
        if split_for_phase or err > self.rel_tol * max(mass, 1e-300):
            if depth >= _MAX_DEPTH:
                if split_for_phase:
                    raise BranchJump(
                        f"sqrt(q) branch could not be continued near t={mid:.6g}"
                    )
                raise QuadratureFailure(
                    f"error target unmet at max depth near t={mid:.6g}"
                )
            w_mid = self._panel(t0, mid, w_ref, depth + 1)
            return self._panel(mid, t1, w_mid, depth + 1)

        self.S += ik
        self.mass += mass
        return last_nonzero


def _plain_sampler(p: Poly, a: complex, b: complex):
    d = b - a

    def sample(t: float):
        return p(a + t * d), d

    return sample


def _tp_start_sampler(p: Poly, a: complex, b: complex):
    """z = a + (b - a) u^2 removes the sqrt singularity at the start node a."""
    d = b - a

    def sample(u: float):
        return p(a + d * (u * u)), 2.0 * u * d

    return sample


def _tp_both_sampler(p: Poly, a: complex, b: complex):
    """z = m + hw sin(theta) removes sqrt singularities at both endpoints."""
    m = 0.5 * (a + b)
    hw = 0.5 * (b - a)

    def sample(th: float):
        return p(m + hw * math.sin(th)), hw * math.cos(th)

    return sample


def action(p: Poly, path: PathC, rel_tol: float = 1e-10) -> ActionValue:
    """Complex action int sqrt(q) dz along the polyline, branch-continuous,
    together with the |sqrt(q)| arc mass over the same panels.

    Endpoint nodes that are turning points get a singularity-removing
    substitution.  A turning point strictly inside a segment raises
    BranchJump.  The branch resets at an interior turning-point node;
    callers that need continuity through one should stop the path there.
    """
    pts = path.points
    seed = path.branch_seed
    acc = _Panelizer(rel_tol)

    w_ref = 0j
    if seed is not None and seed != 0:
        w_ref = seed
        if not _is_tp(p, pts[0]):
            w0 = cmath.sqrt(p(pts[0]))
            if min(abs(w0 - seed), abs(w0 + seed)) > 1e-6 * max(abs(w0), 1e-300):
                raise ValueError("branch_seed is not a square root of q at the first node")

    for a, b in zip(pts[:-1], pts[1:]):
        a_tp = _is_tp(p, a)
        b_tp = _is_tp(p, b)
        if a_tp and b_tp:
            acc.sampler = _tp_both_sampler(p, a, b)
            t0, t1 = -0.5 * math.pi, 0.5 * math.pi
        elif a_tp:
            acc.sampler = _tp_start_sampler(p, a, b)
            t0, t1 = 0.0, 1.0
        elif b_tp:
            _segment_into_tp(p, a, b, w_ref, acc)
            w_ref = 0j
            continue
        else:
            acc.sampler = _plain_sampler(p, a, b)
            t0, t1 = 0.0, 1.0

        if w_ref == 0:
            qv, _ = acc.sampler(t0 + 1e-3 * (t1 - t0))
            w_ref = cmath.sqrt(qv)
        w_ref = acc.run(t0, t1, w_ref)
        # pin the reference to the exact segment endpoint
        w_ref = 0j if b_tp else _continue_sqrt(p(b), w_ref)

    return ActionValue(S=acc.S, branch_end=w_ref, abs_mass=acc.mass)


def _segment_into_tp(p: Poly, a: complex, b: complex, w_ref: complex,
                     acc: _Panelizer) -> None:
    """Integrate a segment that terminates at a turning point b by running
    the start-substituted integral from b toward a and negating, on the
    sheet that matches w_ref at a."""
    sub = _Panelizer(acc.rel_tol)
    sub.sampler = _tp_start_sampler(p, b, a)
    qv_far, _ = sub.sampler(1.0)
    w_far = _continue_sqrt(qv_far, w_ref)
    qv0, _ = sub.sampler(1e-3)
    w_end = sub.run(0.0, 1.0, cmath.sqrt(qv0))
    flip = (w_end.conjugate() * w_far).real < 0
    acc.S += sub.S if flip else -sub.S
    acc.mass += sub.mass


def action_between(p: Poly, z0: complex, z1: complex,
                   seed: complex | None = None, rel_tol: float = 1e-10) -> ActionValue:
    return action(p, PathC([z0, z1], seed), rel_tol=rel_tol)


def sqrt_q_along(p: Poly, path: PathC, samples_per_segment: int = 64,
                 max_halvings: int = 40) -> list[tuple[complex, complex]]:
    """Branch-continuous samples of sqrt(q) along the path.

    Consecutive samples whose phase difference exceeds pi/4 are refined by
    halving; a jump that stays ~pi/2 under refinement means a turning point
    sits on the path and raises BranchJump.  The first sample matches the
    branch seed to relative error 1e-6 when one is given.
    """
    pts = path.points
    out: list[tuple[complex, complex]] = []
    w_ref: complex | None = None
    for a, b in zip(pts[:-1], pts[1:]):
        min_dt = 1.0 / samples_per_segment / 2.0 ** max_halvings
        ts = [k / samples_per_segment for k in range(samples_per_segment + 1)]
        if w_ref is None:
            q0 = p(a)
            w0 = cmath.sqrt(q0)
            if path.branch_seed is not None and path.branch_seed != 0:
                if (w0.conjugate() * path.branch_seed).real < 0:
                    w0 = -w0
                if w0 != 0 and abs(w0 - path.branch_seed) > 1e-6 * abs(w0):
                    raise ValueError("branch_seed is not a square root of q at the start")
            w_ref = w0
            out.append((a, w0))
        i = 0
        while i < len(ts) - 1:
            z1 = a + ts[i + 1] * (b - a)
            w1 = _continue_sqrt(p(z1), w_ref)
            jump = abs(cmath.phase(w1 / w_ref)) if (w_ref != 0 and w1 != 0) else 0.0
            if jump > 0.25 * math.pi:
                if ts[i + 1] - ts[i] <= min_dt:
                    raise BranchJump(f"branch jump near z={z1:.6g}")
                ts.insert(i + 1, 0.5 * (ts[i] + ts[i + 1]))
                continue
            out.append((z1, w1))
            if w1 != 0:
                w_ref = w1
            i += 1
    return out


def _adaptive_real(f: Callable[[float], float], t0: float, t1: float,
                   rel_tol: float) -> float:
    """Adaptive GK quadrature of a real integrand."""

    def panel(a: float, b: float, depth: int) -> float:
        h = 0.5 * (b - a)
        m = 0.5 * (a + b)
        vals = [f(m + h * x) for x in _XK]
        ik = sum(w * v for w, v in zip(_WK, vals)) * h
        ig = sum(_WG[j] * vals[2 * j + 1] for j in range(7)) * h
        mass = sum(w * abs(v) for w, v in zip(_WK, vals)) * abs(h)
        if abs(ik - ig) > rel_tol * max(mass, 1e-300):
            if depth >= _MAX_DEPTH:
                raise QuadratureFailure(f"real quadrature stalled near t={m:.6g}")
            return panel(a, m, depth + 1) + panel(m, b, depth + 1)
        return ik

    return panel(t0, t1, 0)


def well_action(p: Poly, a: float, b: float, rel_tol: float = 1e-10) -> float:
    """int_a^b |sqrt(q)| dt over a classically allowed interval (q < 0 on
    (a, b), with a, b consecutive real turning points)."""
    return _real_action(p, a, b, sign=-1.0, rel_tol=rel_tol)


def barrier_action(p: Poly, a: float, b: float, rel_tol: float = 1e-10) -> float:
    """int_a^b sqrt(q) dt over a forbidden interval (q > 0 on (a, b))."""
    return _real_action(p, a, b, sign=+1.0, rel_tol=rel_tol)


def _real_action(p: Poly, a: float, b: float, sign: float, rel_tol: float) -> float:
    if not a < b:
        raise ValueError("need a < b")
    m = 0.5 * (a + b)
    hw = 0.5 * (b - a)
    scale = max(abs(c) for c in p.coeffs)

    def f(th: float) -> float:
        t = m + hw * math.sin(th)
        g = sign * p(complex(t, 0.0)).real
        if g < -1e-9 * scale * max(1.0, abs(t)) ** p.degree:
            kind = "q >= 0" if sign < 0 else "q <= 0"
            raise SignError(f"{kind} detected at interior sample t={t:.6g}")
        return math.sqrt(max(g, 0.0)) * hw * math.cos(th)

    return _adaptive_real(f, -0.5 * math.pi, 0.5 * math.pi, rel_tol)


def agmon_mass(p: Poly, curve: Sequence[complex], rel_tol: float = 1e-10) -> float:
    """(1/pi) int |sqrt(q)| |dz| along a polyline.  The integrand is a
    modulus, so no branch tracking is involved; additive over concatenation
    and invariant under node insertion."""
    pts = [complex(z) for z in curve]
    if len(pts) < 2:
        return 0.0
    return sum(_agmon_segment(p, a, b, rel_tol) for a, b in zip(pts[:-1], pts[1:])) / math.pi


def _agmon_segment(p: Poly, a: complex, b: complex, rel_tol: float) -> float:
    if a == b:
        return 0.0
    L = abs(b - a)
    a_tp = _is_tp(p, a)
    b_tp = _is_tp(p, b)
    if a_tp and b_tp:
        m = 0.5 * (a + b)
        hw = 0.5 * (b - a)

        def f(th: float) -> float:
            return math.sqrt(abs(p(m + hw * math.sin(th)))) * L * 0.5 * math.cos(th)

        return _adaptive_real(f, -0.5 * math.pi, 0.5 * math.pi, rel_tol)
    if b_tp:
        a, b = b, a
        a_tp = True
    if a_tp:
        d = b - a

        def f(u: float) -> float:
            return math.sqrt(abs(p(a + d * u * u))) * 2.0 * u * L

        return _adaptive_real(f, 0.0, 1.0, rel_tol)

    def f(t: float) -> float:
        return math.sqrt(abs(p(a + t * (b - a)))) * L

    return _adaptive_real(f, 0.0, 1.0, rel_tol)


def agmon_cumulative(p: Poly, curve: Sequence[complex], rel_tol: float = 1e-9) -> list[float]:
    """Cumulative Agmon mass at each node of the polyline (starts at 0)."""
    pts = [complex(z) for z in curve]
    out = [0.0]
    for a, b in zip(pts[:-1], pts[1:]):
        out.append(out[-1] + _agmon_segment(p, a, b, rel_tol) / math.pi)
    return out
