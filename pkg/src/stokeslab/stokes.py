"""Stokes and anti-Stokes line tracing and the Stokes graph.

A Stokes line through a simple turning point z0 is a maximal level curve
Re S(z0, z) = 0; an anti-Stokes line has Im S(z0, z) = 0.  Lines are traced
by integrating dz/ds = sigma * i / sqrt(q) (Stokes) or sigma / sqrt(q)
(anti-Stokes) with a branch-continuous sqrt, which moves at unit speed in S.
Each accepted step re-measures the accumulated action by Gauss quadrature on
the step chord and applies a Newton projection back onto the level set, so
long lines cannot drift.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

from .action import PathC, action, _continue_sqrt
from .errors import BranchJump, StepUnderflow
from .poly import Poly, TurningPoint, assert_simple, classified_real_segments, turning_points

__all__ = [
    "TraceConfig",
    "LevelLine",
    "StokesGraph",
    "launch_angles",
    "trace_line",
    "build_graph",
]

# 4-point Gauss-Legendre nodes/weights on [0, 1] for per-step action increments
_GL4 = (
    (0.06943184420297371, 0.17392742256872693),
    (0.33000947820757187, 0.32607257743127305),
    (0.6699905217924281, 0.32607257743127305),
    (0.9305681557970262, 0.17392742256872693),
)

# Dormand-Prince 5(4) tableau
_DP_C = (0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0)
_DP_A = (
    (),
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
_DP_B5 = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0)
_DP_B4 = (5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0,
          -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0)


@dataclass
class TraceConfig:
    R: float | None = None          # escape radius; default 4 (1 + max|tp|)
    L_max: float | None = None      # max arc length; default 50 R
    tol_line: float = 1e-6
    rtol: float = 1e-10
    lam_ref: float = 1.0            # sets the launch/capture radius scale
    max_steps: int = 400_000
    ramp_fractions: tuple = (0.02, 0.08, 0.2, 0.45, 0.75)


@dataclass
class LevelLine:
    kind: str                       # "stokes" | "anti_stokes"
    origin: TurningPoint
    launch_angle: float
    nodes: list                     # polyline, starts at the origin tp
    cum_S: list                     # action from the origin at each node
    termination: tuple              # ("turning_point", z) | ("unbounded", dir) | ("max_length",)
    arc_length: float

    def to_record(self) -> dict:
        term = {"type": self.termination[0]}
        if self.termination[0] == "turning_point":
            term["z"] = [self.termination[1].real, self.termination[1].imag]
        elif self.termination[0] == "unbounded":
            term["direction"] = self.termination[1]
        return {
            "kind": self.kind,
            "origin": [self.origin.z.real, self.origin.z.imag],
            "launch_angle": self.launch_angle,
            "termination": term,
            "nodes": [[z.real, z.imag] for z in self.nodes],
        }


@dataclass
class StokesGraph:
    poly: Poly
    turning_points: list
    lines: list
    real_axis_segments: list

    @property
    def finite_lines(self):
        return [l for l in self.lines if l.termination[0] == "turning_point"]

    @property
    def unbounded_lines(self):
        return [l for l in self.lines if l.termination[0] == "unbounded"]

    def summary(self) -> dict:
        return {
            "turning_points": len(self.turning_points),
            "finite": len(self.finite_lines),
            "unbounded": len(self.unbounded_lines),
            "max_length": sum(1 for l in self.lines if l.termination[0] == "max_length"),
            "real_axis_segments": [
                {"a": a, "b": b, "kind": k} for a, b, k in self.real_axis_segments
            ],
        }


def launch_angles(p: Poly, tp: TurningPoint, kind: str = "stokes") -> list[float]:
    """The three launch directions at a simple turning point.

    Near z0, S ~ (2/3) sqrt(q'(z0)) (z - z0)^(3/2); Re S = 0 leaves at
    angles (pi + 2 k pi - arg q') / 3 and Im S = 0 at (2 k pi - arg q') / 3.
    """
    if tp.multiplicity != 1:
        raise ValueError("launch angles need a simple turning point")
    _, dq = p.eval_with_deriv(tp.z)
    base = -cmath.phase(dq)
    if kind == "stokes":
        raw = [(math.pi + 2.0 * k * math.pi + base) / 3.0 for k in range(3)]
    elif kind == "anti_stokes":
        raw = [(2.0 * k * math.pi + base) / 3.0 for k in range(3)]
    else:
        raise ValueError(f"unknown line kind {kind!r}")
    return sorted(a % (2.0 * math.pi) for a in raw)


def _launch_radius(p: Poly, tp: TurningPoint, tps: Sequence[TurningPoint],
                   lam_ref: float) -> float:
    _, dq = p.eval_with_deriv(tp.z)
    r = abs(dq) ** (-1.0 / 3.0) * lam_ref ** (-7.0 / 12.0)
    others = [abs(tp.z - o.z) for o in tps if o.z != tp.z]
    if others:
        r = min(r, 0.15 * min(others))
    return r


def _chord_dS(p: Poly, z0: complex, z1: complex, w_ref: complex) -> tuple[complex, complex]:
    """Action increment over a straight chord by 4-point Gauss, branch
    continued from w_ref; returns (dS, w at z1)."""
    d = z1 - z0
    acc = 0j
    w = w_ref
    for t, wt in _GL4:
        w = _continue_sqrt(p(z0 + t * d), w)
        acc += wt * w
    w_end = _continue_sqrt(p(z1), w)
    return acc * d, w_end


def trace_line(p: Poly, tp: TurningPoint, angle: float, kind: str = "stokes",
               cfg: TraceConfig | None = None,
               tps: Sequence[TurningPoint] | None = None) -> LevelLine:
    """Trace one level line from a simple turning point.

    Stops when it enters the capture radius of a turning point, leaves the
    bounding circle |z| = R, or exceeds the arc-length budget.
    """
    cfg = cfg or TraceConfig()
    if tps is None:
        tps = turning_points(p)
    assert_simple([tp])
    R = cfg.R if cfg.R is not None else 4.0 * (1.0 + max(abs(t.z) for t in tps))
    L_max = cfg.L_max if cfg.L_max is not None else 50.0 * R

    r0 = _launch_radius(p, tp, tps, cfg.lam_ref)
    direction = cmath.exp(1j * angle)
    # snap to the axes so that real-axis and imaginary-axis lines are exact
    if abs(direction.real) < 1e-12:
        direction = complex(0.0, math.copysign(1.0, direction.imag))
    if abs(direction.imag) < 1e-12:
        direction = complex(math.copysign(1.0, direction.real), 0.0)
    z = tp.z + r0 * direction

    # exact seed action from the turning point, then project onto the level set
    w = cmath.sqrt(p(z))
    S = action(p, PathC([tp.z, z], w)).S
    rot = 1j if kind == "stokes" else 1.0

    def drift(Sv: complex) -> float:
        return Sv.real if kind == "stokes" else Sv.imag

    for _ in range(4):
        corr = -drift(S) if kind == "stokes" else -1j * drift(S)
        if w == 0:
            break
        dz = corr / w
        z += dz
        w = _continue_sqrt(p(z), w)
        S = action(p, PathC([tp.z, z], w)).S

    # outward direction
    vel = rot / w
    sigma = 1.0 if (vel.conjugate() * direction).real > 0 else -1.0

    nodes = [tp.z, z]
    cum_S = [0j, S]
    arc = abs(z - tp.z)
    h = 0.25 * r0 * abs(w)
    termination = ("max_length",)

    def rhs(zz: complex, w_ref: complex) -> complex:
        ww = _continue_sqrt(p(zz), w_ref)
        if ww == 0:
            raise BranchJump("hit a turning point mid-step")
        return sigma * rot / ww

    steps = 0
    stage_k: list[complex] = [0j] * 7
    while steps < cfg.max_steps:
        steps += 1
        d_near = min(abs(z - o.z) for o in tps)
        # never step across a capture disc; 1/|w| blows up near turning points
        h_cap_z = max(0.5 * d_near, 0.1 * r0)
        h_cap_z = min(h_cap_z, 0.25 * (1.0 + abs(z)))
        h = min(h, h_cap_z * abs(w))
        if h < 1e-14 * (1.0 + abs(z)):
            raise StepUnderflow(f"trace step underflow at z={z:.6g}")

        # Dormand-Prince step in the S-parametrization
        ok = True
        try:
            stage_k[0] = rhs(z, w)
            for i in range(1, 7):
                zi = z + h * sum(a * stage_k[j] for j, a in enumerate(_DP_A[i]))
                stage_k[i] = rhs(zi, w)
            z5 = z + h * sum(b * k for b, k in zip(_DP_B5, stage_k))
            z4 = z + h * sum(b * k for b, k in zip(_DP_B4, stage_k))
        except BranchJump:
            ok = False
        if not ok:
            h *= 0.25
            continue
        err = abs(z5 - z4)
        tol = 1e-13 + cfg.rtol * (1.0 + abs(z))
        if err > tol:
            h *= max(0.2, 0.9 * (tol / err) ** 0.2)
            continue

        dS, w_new = _chord_dS(p, z, z5, w)
        S += dS
        # Newton projection back onto the level set
        e = drift(S)
        corr = (-e if kind == "stokes" else -1j * e)
        z5 = z5 + corr / w_new
        S += corr
        w_new = _continue_sqrt(p(z5), w_new)

        arc += abs(z5 - z)
        z, w = z5, w_new
        nodes.append(z)
        cum_S.append(S)
        if err > 0:
            h = min(h * min(5.0, 0.9 * (tol / err) ** 0.2), h * 5.0)

        # termination tests
        if abs(z) > R:
            termination = ("unbounded", cmath.phase(z))
            break
        captured = None
        for o in tps:
            if o.z == tp.z and arc < 3.0 * r0:
                continue
            if abs(z - o.z) < _launch_radius(p, o, tps, cfg.lam_ref):
                captured = o
                break
        if captured is not None:
            tail = action(p, PathC([z, captured.z], w))
            S += tail.S
            nodes.append(captured.z)
            cum_S.append(S)
            arc += abs(captured.z - z)
            termination = ("turning_point", captured.z)
            break
        if arc > L_max:
            termination = ("max_length",)
            break

    line = LevelLine(kind=kind, origin=tp, launch_angle=angle, nodes=nodes,
                     cum_S=cum_S, termination=termination, arc_length=arc)
    _densify_ends(p, line, cfg)
    return line


def _densify_ends(p: Poly, line: LevelLine, cfg: TraceConfig) -> None:
    """Insert projected nodes between each turning-point endpoint and its
    first traced node; the launch gap is otherwise a single long chord."""
    kind = line.kind

    def ramp(tp_z: complex, far: complex, S_far: complex):
        out_nodes, out_S = [], []
        for f in cfg.ramp_fractions:
            z = tp_z + f * (far - tp_z)
            w = cmath.sqrt(p(z))
            av = action(p, PathC([tp_z, z], w))
            Sv, w_end = av.S, av.branch_end
            # keep the branch consistent with the far node's action
            if abs(Sv - S_far) > abs(-Sv - S_far) and abs(S_far) > 0:
                Sv, w_end = -Sv, -w_end
            e = Sv.real if kind == "stokes" else Sv.imag
            corr = -e if kind == "stokes" else -1j * e
            if w_end != 0:
                z = z + corr / w_end
                Sv = Sv + corr
            out_nodes.append(z)
            out_S.append(Sv)
        return out_nodes, out_S

    ns, ss = ramp(line.nodes[0], line.nodes[1], line.cum_S[1])
    line.nodes[1:1] = ns
    line.cum_S[1:1] = ss
    if line.termination[0] == "turning_point":
        base = line.cum_S[-1]
        ns, ss = ramp(line.nodes[-1], line.nodes[-2], line.cum_S[-2] - base)
        line.nodes[-1:-1] = [z for z in reversed(ns)]
        line.cum_S[-1:-1] = [base + s for s in reversed(ss)]


def _arc_midpoint(line: LevelLine) -> complex:
    """Node closest to half the arc length (an index midpoint would depend
    on the traversal direction)."""
    half = 0.5 * line.arc_length
    s = 0.0
    for a, b in zip(line.nodes[:-1], line.nodes[1:]):
        step = abs(b - a)
        if s + step >= half:
            t = (half - s) / step if step > 0 else 0.0
            return a + t * (b - a)
        s += step
    return line.nodes[-1]


def _reflect_line(line: LevelLine, origin: TurningPoint) -> LevelLine:
    """Mirror image of a traced line through the real axis (real q only)."""
    term = line.termination
    if term[0] == "turning_point":
        term = ("turning_point", term[1].conjugate())
    elif term[0] == "unbounded":
        term = ("unbounded", -term[1])
    return LevelLine(
        kind=line.kind,
        origin=origin,
        launch_angle=(2.0 * math.pi - line.launch_angle) % (2.0 * math.pi),
        nodes=[z.conjugate() for z in line.nodes],
        cum_S=[s.conjugate() for s in line.cum_S],
        termination=term,
        arc_length=line.arc_length,
    )


def build_graph(p: Poly, cfg: TraceConfig | None = None) -> StokesGraph:
    """Trace all three Stokes lines from every turning point, deduplicate the
    finite lines found from both ends, and classify the real-axis segments.

    For real q only the upper-half representatives are traced; their mirror
    images are generated by conjugation, so the graph is exactly closed under
    reflection through the real axis.
    """
    cfg = cfg or TraceConfig()
    tps = turning_points(p)
    assert_simple(tps)

    lines = []
    if p.is_real:
        mirrors = []
        for tp in tps:
            if tp.z.imag < -1e-12:
                continue  # produced as the mirror of its conjugate
            for ang in launch_angles(p, tp, "stokes"):
                canonical = tp.z.imag > 1e-12 or ang <= math.pi + 1e-12
                if not canonical:
                    continue
                line = trace_line(p, tp, ang, "stokes", cfg, tps)
                lines.append(line)
                self_mirror = tp.is_real and (ang < 1e-12 or abs(ang - math.pi) < 1e-12)
                if not self_mirror:
                    target = tp if tp.is_real else next(
                        t for t in tps if abs(t.z - tp.z.conjugate()) < 1e-12
                    )
                    mirrors.append(_reflect_line(line, target))
        lines.extend(mirrors)
    else:
        for tp in tps:
            for ang in launch_angles(p, tp, "stokes"):
                lines.append(trace_line(p, tp, ang, "stokes", cfg, tps))

    deduped: list[LevelLine] = []
    seen: dict[tuple, list] = {}
    for line in sorted(lines, key=lambda l: (l.origin.z.real, l.origin.z.imag, l.launch_angle)):
        if line.termination[0] != "turning_point":
            deduped.append(line)
            continue
        a, b = line.nodes[0], line.nodes[-1]
        key = tuple(sorted(
            ((round(a.real, 6), round(a.imag, 6)), (round(b.real, 6), round(b.imag, 6)))
        ))
        mid = _arc_midpoint(line)
        tol_mid = 1e-2 * (line.arc_length + 1.0)
        mids = seen.setdefault(key, [])
        if any(abs(mid - m) < tol_mid for m in mids):
            continue
        mids.append(mid)
        deduped.append(line)

    return StokesGraph(
        poly=p,
        turning_points=tps,
        lines=deduped,
        real_axis_segments=classified_real_segments(p, tps) if p.is_real else [],
    )
