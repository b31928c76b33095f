"""Complex zeros of eigenfunctions by analytic continuation and the argument
principle.

The eigenfunction anchor (y, dy, log_scale at a real point) is continued
along straight segments with a renormalized Dormand-Prince pair; each
accepted step limits |d arg y| to pi/4, so winding numbers accumulate
alias-free.  Boxes are counted by boundary phase, subdivided quadtree-style
until each holds one zero, and each zero is polished by Newton on the ODE
state (dy is carried exactly by the integrator, no differencing) and then
re-verified by a tight winding box.

Zeros are scale-invariant: renormalization multiplies the state by positive
reals only, changing neither phases nor zero locations.

In regions where the eigenfunction is a single dominant WKB exponential the
true function has no zeros, but a continued numerical solution acquires a
spurious zero ladder where its O(eps) contamination crosses the decayed
true component.  An optional domination cutoff (s_cap) certifies boxes with
min |Re S(turning point, z)| above the cutoff as zero-free instead of
counting them, which keeps searches at large lam honest; with s_cap unset
the search is exhaustive and the total is checked against the region-level
boundary winding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .action import PathC, action, _continue_sqrt
from .errors import LostZero, PhaseAliasing, StepUnderflow
from .poly import Poly, TurningPoint, turning_points
from .spectrum import Anchor

__all__ = [
    "ZeroSearchConfig",
    "LocatedZero",
    "ZeroSet",
    "BoxCount",
    "continue_state",
    "count_zeros_box",
    "locate_zeros",
]

_DP_C = (0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0)
_DP_A = (
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
_DP_B5 = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0)
_DP_E = (5179.0 / 57600.0 - 35.0 / 384.0, 0.0, 7571.0 / 16695.0 - 500.0 / 1113.0,
         393.0 / 640.0 - 125.0 / 192.0, -92097.0 / 339200.0 + 2187.0 / 6784.0,
         187.0 / 2100.0 - 11.0 / 84.0, 1.0 / 40.0)


@dataclass
class ZeroSearchConfig:
    rtol: float = 1e-12
    phase_cap: float = 0.25 * math.pi
    newton_tol: float = 1e-10
    max_depth: int = 42
    s_cap: float | None = None      # domination cutoff on min |Re S| probes
    verify: bool = True
    winding_int_tol: float = 1e-3
    jitter: float = 1e-4            # relative outer-boundary inflation on stall
    cut_shifts: tuple = (0.0, 0.11, -0.07, 0.23, -0.17)


@dataclass(frozen=True)
class LocatedZero:
    z: complex
    residual: float
    verified: bool


@dataclass
class ZeroSet:
    lam: float
    region: tuple                   # (x0, x1, y0, y1)
    zeros: list
    winding_total: int
    dominated_boxes: int = 0
    counted_boxes: int = 0
    s_cap: float | None = None

    def to_record(self) -> dict:
        return {
            "lambda": self.lam,
            "region": list(self.region),
            "count": len(self.zeros),
            "winding_total": self.winding_total,
            "dominated_boxes": self.dominated_boxes,
            "counted_boxes": self.counted_boxes,
            "s_cap": self.s_cap,
            "zeros": [
                {"re": z.z.real, "im": z.z.imag, "residual": z.residual,
                 "verified": z.verified}
                for z in self.zeros
            ],
        }


@dataclass
class BoxCount:
    rect: tuple
    winding: int
    raw_winding: float
    boundary_samples: list = field(default_factory=list)


class _State:
    """Continuation state: renormalized (y, dy) and the walked phase of y."""

    __slots__ = ("z", "y", "dy")

    def __init__(self, z: complex, y: complex, dy: complex):
        self.z = z
        self.y = y
        self.dy = dy


class _EdgeStall(Exception):
    """|y| collapsed on a boundary: a zero sits on or very near the edge."""


def _renorm(y: complex, dy: complex) -> tuple[complex, complex]:
    m = max(abs(y), abs(dy))
    if m > 2.0 or m < 0.5:
        y /= m
        dy /= m
    return y, dy


def _march(p: Poly, lam: float, st: _State, z_to: complex, rtol: float,
           phase_cap: float, stall_tol: float = 0.0):
    """Continue the state along the straight segment to z_to.

    Returns the accumulated (signed) phase change of y.  Raises _EdgeStall if
    |y|/|(y, dy)| drops below stall_tol, and StepUnderflow if the step dies.
    """
    d = z_to - st.z
    if d == 0:
        return 0.0
    lam2 = lam * lam
    rc = tuple(reversed(p.coeffs))
    y = st.y
    v = st.dy * d          # derivative w.r.t. the segment parameter
    qv = p(st.z)
    rate = abs(d) * (lam * math.sqrt(abs(qv)) + 1.0) + 1.0
    h = min(1.0, 0.5 / rate)
    t = 0.0
    dphi = 0.0
    k = [0j] * 7

    def f(tt: float, yy: complex, vv: complex):
        z = st.z + tt * d
        q = 0j
        for c in rc:
            q = q * z + c
        return vv, (lam2 * (d * d)) * q * yy

    while t < 1.0:
        if h < 1e-13:
            raise StepUnderflow(f"continuation step underflow near z={st.z + t * d:.6g}")
        if t + h > 1.0:
            h = 1.0 - t
        k[0] = f(t, y, v)
        ok = True
        for i in range(1, 7):
            ca = _DP_A[i - 1]
            yy = y + h * sum(a * k[j][0] for j, a in enumerate(ca))
            vv = v + h * sum(a * k[j][1] for j, a in enumerate(ca))
            k[i] = f(t + _DP_C[i - 1] * h, yy, vv)
        y5 = y + h * sum(b * kk[0] for b, kk in zip(_DP_B5, k))
        v5 = v + h * sum(b * kk[1] for b, kk in zip(_DP_B5, k))
        ey = h * sum(b * kk[0] for b, kk in zip(_DP_E, k))
        ev = h * sum(b * kk[1] for b, kk in zip(_DP_E, k))
        scale = max(abs(y), abs(v), abs(y5), abs(v5), 1e-300)
        err = max(abs(ey), abs(ev)) / (rtol * scale)
        if err > 1.0:
            h *= max(0.15, 0.9 * err ** -0.2)
            continue
        # phase cap keeps the winding alias-free
        if phase_cap is not None and y != 0 and y5 != 0:
            step_phi = cmath.phase(y5 / y)
            if abs(step_phi) > phase_cap:
                h *= max(0.15, 0.8 * phase_cap / abs(step_phi))
                continue
        elif phase_cap is None:
            step_phi = 0.0
        else:
            step_phi = 0.0
        t += h
        y, v = y5, v5
        dphi += step_phi
        nrm = math.hypot(abs(y), abs(v))
        if stall_tol > 0.0 and abs(y) < stall_tol * max(nrm, 1e-300):
            raise _EdgeStall
        y, v = _renorm(y, v)
        if err > 0:
            h = min(h * min(5.0, 0.9 * err ** -0.2), 1.0)
    st.z = z_to
    st.y = y
    st.dy = v / d
    return dphi


def continue_state(p: Poly, lam: float, anchor: Anchor, path,
                   rtol: float = 1e-12) -> Anchor:
    """Analytic continuation of the eigenfunction data along a polyline;
    returns the renormalized state at the endpoint.  log_scale is not
    tracked through complex continuation (zero locations and windings are
    invariant under the positive renormalization)."""
    pts = [complex(z) for z in path]
    st = _State(complex(anchor.x), anchor.y, anchor.dy)
    for z in pts:
        _march(p, lam, st, z, rtol, None)
    return Anchor(x=st.z, y=st.y, dy=st.dy, log_scale=0.0, parity=anchor.parity)


def _corner_states(p: Poly, lam: float, anchor: Anchor, rect: tuple,
                   cfg: ZeroSearchConfig) -> list[_State]:
    x0, x1, y0, y1 = rect
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    st = _State(complex(anchor.x), anchor.y, anchor.dy)
    # plain continuation: no phase collection, no cap
    _march(p, lam, st, corners[0], cfg.rtol, None)
    out = [_State(st.z, st.y, st.dy)]
    for c in corners[1:]:
        _march(p, lam, st, c, cfg.rtol, None)
        out.append(_State(st.z, st.y, st.dy))
    return out


def count_zeros_box(p: Poly, lam: float, box: tuple, anchor: Anchor,
                    cfg: ZeroSearchConfig | None = None) -> BoxCount:
    """Winding number of y around the box boundary = number of zeros inside.

    The boundary walk accumulates per-step phases, each below pi/4 by step
    control; the total must be an integer to winding_int_tol or the count is
    rejected (PhaseAliasing: a zero sits essentially on the boundary)."""
    cfg = cfg or ZeroSearchConfig()
    states = _corner_states(p, lam, anchor, box, cfg)
    x0, x1, y0, y1 = box
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    total = 0.0
    samples = []
    for i in range(4):
        st = _State(states[i].z, states[i].y, states[i].dy)
        try:
            total += _march(p, lam, st, corners[(i + 1) % 4], cfg.rtol, cfg.phase_cap,
                            stall_tol=1e-11)
        except _EdgeStall:
            raise PhaseAliasing(
                f"|y| collapsed on the boundary of {box}; jitter the box"
            ) from None
        samples.append((corners[i], cmath.phase(st.y)))
    w = total / (2.0 * math.pi)
    if abs(w - round(w)) > cfg.winding_int_tol:
        raise PhaseAliasing(f"non-integer winding {w:.6f} for box {box}")
    return BoxCount(rect=box, winding=int(round(w)), raw_winding=w,
                    boundary_samples=samples)


# ---------------------------------------------------------------------------
# quadtree search
# ---------------------------------------------------------------------------

class _Search:
    def __init__(self, p: Poly, lam: float, anchor: Anchor, cfg: ZeroSearchConfig):
        self.p = p
        self.lam = lam
        self.cfg = cfg
        self.anchor = anchor
        self.tps = turning_points(p)
        self.zeros: list[tuple[complex, float, bool]] = []
        self.dominated = 0
        self.counted = 0
        self.audit: list = []
        self.probe_cache: dict = {}

    # -- domination certificate ------------------------------------------

    def _re_action_probe(self, z: complex) -> float:
        """min over turning points of |Re S(tp, z)| along a direct chord
        (coarse fixed-panel quadrature; used only for the domination cap)."""
        key = (round(z.real, 9), round(z.imag, 9))
        if key in self.probe_cache:
            return self.probe_cache[key]
        best = math.inf
        for tp in self.tps:
            if abs(z - tp.z) < 1e-12:
                best = 0.0
                break
            s = _chord_re_action(self.p, tp.z, z)
            best = min(best, abs(s))
        self.probe_cache[key] = best
        return best

    def _dominated(self, rect: tuple) -> bool:
        if self.cfg.s_cap is None:
            return False
        x0, x1, y0, y1 = rect
        pts = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1),
               complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)),
               complex(0.5 * (x0 + x1), y0), complex(0.5 * (x0 + x1), y1),
               complex(x0, 0.5 * (y0 + y1)), complex(x1, 0.5 * (y0 + y1))]
        lo = min(self._re_action_probe(z) for z in pts)
        diag = math.hypot(x1 - x0, y1 - y0)
        qmax = max(abs(self.p(z)) for z in pts)
        margin = 0.5 * diag * math.sqrt(qmax)
        return lo - margin > self.cfg.s_cap

    # -- boundary walking with corner states ------------------------------

    def _edge_phase(self, st: _State, z_to: complex) -> float:
        return _march(self.p, self.lam, st, z_to, self.cfg.rtol, self.cfg.phase_cap,
                      stall_tol=1e-11)

    def _box_winding(self, rect: tuple, states: list[_State]) -> float:
        x0, x1, y0, y1 = rect
        corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
        total = 0.0
        for i in range(4):
            st = _State(states[i].z, states[i].y, states[i].dy)
            total += self._edge_phase(st, corners[(i + 1) % 4])
        return total / (2.0 * math.pi)

    def _subdivide(self, rect: tuple, states: list[_State], depth: int,
                   min_size: float) -> None:
        """Split into 4 children at a (possibly shifted) center and recurse.
        A stall (zero on a cut) rolls back any partial results and retries
        with a deterministically shifted cut."""
        x0, x1, y0, y1 = rect
        for shift in self.cfg.cut_shifts:
            xc = 0.5 * (x0 + x1) + shift * (x1 - x0)
            yc = 0.5 * (y0 + y1) + shift * (y1 - y0)
            mark = len(self.zeros)
            dom0, cnt0 = self.dominated, self.counted
            try:
                self._subdivide_at(rect, states, xc, yc, depth, min_size)
                return
            except _EdgeStall:
                del self.zeros[mark:]
                self.dominated, self.counted = dom0, cnt0
                continue
        raise LostZero(f"could not place a zero-free cut in box {rect}", self.audit)

    def _subdivide_at(self, rect, states, xc, yc, depth, min_size) -> None:
        x0, x1, y0, y1 = rect
        c0, c1, c2, c3 = states  # bl, br, tr, tl

        def walked(src: _State, z_to: complex) -> _State:
            st = _State(src.z, src.y, src.dy)
            self._edge_phase(st, z_to)
            return st

        # midpoints of the four edges and the center, continued from corners
        mb = walked(c0, complex(xc, y0))
        mr = walked(c1, complex(x1, yc))
        mt = walked(c2, complex(xc, y1))
        ml = walked(c0, complex(x0, yc))
        cc = walked(mb, complex(xc, yc))

        kids = [
            ((x0, xc, y0, yc), [c0, mb, cc, ml]),
            ((xc, x1, y0, yc), [mb, c1, mr, cc]),
            ((xc, x1, yc, y1), [cc, mr, c2, mt]),
            ((x0, xc, yc, y1), [ml, cc, mt, c3]),
        ]
        for kid_rect, kid_states in kids:
            self._process(kid_rect, kid_states, depth + 1, min_size)

    def _process(self, rect, states, depth, min_size) -> None:
        if self._dominated(rect):
            self.dominated += 1
            return
        w = self._box_winding(rect, states)
        self.counted += 1
        if abs(w - round(w)) > self.cfg.winding_int_tol:
            raise _EdgeStall
        wi = int(round(w))
        if wi == 0:
            return
        x0, x1, y0, y1 = rect
        if wi == 1:
            self._newton(rect, states)
            return
        if depth >= self.cfg.max_depth or max(x1 - x0, y1 - y0) < min_size:
            raise LostZero(
                f"{wi} zeros left in box {rect} at depth {depth}", self.audit
            )
        self._subdivide(rect, states, depth, min_size)

    def _newton(self, rect, states) -> None:
        x0, x1, y0, y1 = rect
        z = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        st = _State(states[0].z, states[0].y, states[0].dy)
        _march(self.p, self.lam, st, z, self.cfg.rtol, None)
        diam = math.hypot(x1 - x0, y1 - y0)
        last = diam
        for _ in range(40):
            nrm = math.hypot(abs(st.y), abs(st.dy))
            if abs(st.y) <= self.cfg.newton_tol * nrm:
                break
            if st.dy == 0:
                break
            step = -st.y / st.dy
            if abs(step) > 0.9 * diam:
                step *= 0.9 * diam / abs(step)
            _march(self.p, self.lam, st, st.z + step, self.cfg.rtol, None)
            last = abs(step)
        nrm = math.hypot(abs(st.y), abs(st.dy))
        resid = abs(st.y) / max(nrm, 1e-300)
        verified = True
        if self.cfg.verify:
            side = max(8.0 * last, 1e-8 * (1.0 + abs(st.z)), 1e-5 * diam)
            vbox = (st.z.real - side, st.z.real + side,
                    st.z.imag - side, st.z.imag + side)
            try:
                vst = _corner_states(self.p, self.lam, self.anchor, vbox, self.cfg)
                wv = self._box_winding(vbox, vst)
                verified = abs(wv - 1.0) < self.cfg.winding_int_tol
            except (_EdgeStall, StepUnderflow):
                verified = False
        self.zeros.append((st.z, resid, verified))


def _chord_re_action(p: Poly, z0: complex, z1: complex) -> float:
    """Coarse Re int sqrt(q) along a straight chord from a turning point:
    3 fixed 15-point panels with the start substitution u^2."""
    from .action import _XK, _WK

    d = z1 - z0
    total = 0j
    w_ref = 0j
    bounds = (0.0, 0.45, 0.75, 1.0)
    for a, b in zip(bounds[:-1], bounds[1:]):
        h = 0.5 * (b - a)
        m = 0.5 * (a + b)
        acc = 0j
        for xk, wk in zip(_XK, _WK):
            u = m + h * xk
            z = z0 + d * u * u
            w = _continue_sqrt(p(z), w_ref)
            if w != 0:
                w_ref = w
            acc += wk * w * (2.0 * u * d)
        total += acc * h
    return total.real


def locate_zeros(p: Poly, lam: float, region: tuple, anchor: Anchor,
                 cfg: ZeroSearchConfig | None = None) -> ZeroSet:
    """All zeros of the continued eigenfunction in a rectangle.

    region = (x0, x1, y0, y1).  Quadtree refinement of winding counts down
    to single-zero boxes, Newton polish on (y, dy), tight-box verification,
    and a final count consistency check: the zero total must equal the
    region-level winding (sum of counted boxes when a domination cutoff is
    active)."""
    cfg = cfg or ZeroSearchConfig()
    x0, x1, y0, y1 = region
    if not (x0 < x1 and y0 < y1):
        raise ValueError("region must be a nonempty rectangle")

    # spacing bound floor for the subdivision: boxes below ~pi/(2 sqrt(M) lam)
    # cannot hold two zeros
    probes = [complex(x, y) for x in (x0, 0.5 * (x0 + x1), x1)
              for y in (y0, 0.5 * (y0 + y1), y1)]
    M = max(abs(p(z)) for z in probes)
    min_size = 0.25 * math.pi / (math.sqrt(M) * lam)

    search = _Search(p, lam, anchor, cfg)
    rect = region
    for attempt in range(6):
        try:
            states = _corner_states(p, lam, anchor, rect, cfg)
            search.zeros.clear()
            search.dominated = 0
            search.counted = 0
            search._process(rect, states, 0, min_size)
            break
        except _EdgeStall:
            # a zero sits on the outer boundary: inflate deterministically
            gx = cfg.jitter * (rect[1] - rect[0]) * (attempt + 1)
            gy = cfg.jitter * (rect[3] - rect[2]) * (attempt + 1)
            rect = (rect[0] - gx, rect[1] + gx, rect[2] - gy, rect[3] + gy)
    else:
        raise LostZero("outer boundary kept stalling on a zero", search.audit)

    zs = sorted(search.zeros, key=lambda t: (t[0].real, t[0].imag))
    # exact-partition quadtree cannot double count; merge only bit-level dupes
    merged: list[tuple[complex, float, bool]] = []
    for z, r, v in zs:
        if merged and abs(z - merged[-1][0]) < 1e-12 * (1.0 + abs(z)):
            continue
        merged.append((z, r, v))

    total = len(merged)
    if cfg.s_cap is None:
        region_w = count_zeros_box(p, lam, rect, anchor, cfg).winding
        if region_w != total:
            raise LostZero(
                f"located {total} zeros but the region winding is {region_w}",
                search.audit,
            )
    zeros = [LocatedZero(z=z, residual=r, verified=v) for z, r, v in merged]
    return ZeroSet(lam=lam, region=rect, zeros=zeros, winding_total=total,
                   dominated_boxes=search.dominated, counted_boxes=search.counted,
                   s_cap=cfg.s_cap)
